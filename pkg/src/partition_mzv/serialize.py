"""JSON encodings for every value the command line speaks, plus the compact
"P(k1,...,kr;d1,...,dr)" word-expression syntax.

All encoders sort terms canonically, so equal values serialize to identical
bytes and every emitted document parses back to the same value.
"""

from __future__ import annotations

from .brackets import QuasimodularPoly
from .exact import QSeries, Rat, rat_str
from .mzv import BiMzv, MzvLin
from .peval import PartitionFunction
from .words import WordSum, check_word, display_key, get_model


# ---------------------------------------------------------------------------
# q-series

def qseries_to_json(s: QSeries) -> dict:
    return {"order": s.order, "coeffs": [rat_str(c) for c in s.coeffs]}


def qseries_from_json(doc: dict) -> QSeries:
    return QSeries(int(doc["order"]), [Rat(c) for c in doc["coeffs"]])


# ---------------------------------------------------------------------------
# partitions

def partition_to_json(lam) -> list:
    return [int(x) for x in lam]


def partition_from_json(doc) -> tuple:
    from .partitions import check_partition

    return check_partition(doc)


# ---------------------------------------------------------------------------
# word sums

def wordsum_to_json(model, u: WordSum) -> dict:
    return {
        "model": get_model(model).name,
        "terms": [
            {"coeff": rat_str(c), "word": [[k, d] for k, d in word]}
            for word, c in u.items()
        ],
    }


def wordsum_from_json(doc: dict):
    model = get_model(doc.get("model", "seki"))
    out: dict = {}
    for term in doc["terms"]:
        word = check_word(tuple((int(k), int(d)) for k, d in term["word"]))
        out[word] = out.get(word, Rat(0)) + Rat(term["coeff"])
    return model, WordSum(out)


def format_word(word) -> str:
    if not word:
        return "P()"
    return "P(%s;%s)" % (
        ",".join(str(k) for k, _ in word),
        ",".join(str(d) for _, d in word),
    )


def format_wordsum(u: WordSum) -> str:
    if not u:
        return "0"
    parts = []
    for i, (word, c) in enumerate(u.items()):
        mag = rat_str(abs(c))
        sign = "-" if c < 0 else "+"
        body = format_word(word) if mag == "1" else f"{mag}*{format_word(word)}"
        if i == 0:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


class WordSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class _WordParser:
    """Recursive-descent parser for rational linear combinations of P(...)."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise WordSyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_int(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a digit")
        return int(self.text[start : self.pos])

    def parse_rational(self):
        num = self.parse_int()
        self.skip_ws()
        if self.peek() == "/":
            self.pos += 1
            self.skip_ws()
            den = self.parse_int()
            if den == 0:
                self.error("zero denominator")
            return Rat(num, den)
        return Rat(num)

    def parse_int_list(self) -> list:
        out = []
        self.skip_ws()
        if self.peek() in ");":
            return out
        out.append(self.parse_int())
        self.skip_ws()
        while self.peek() == ",":
            self.pos += 1
            self.skip_ws()
            out.append(self.parse_int())
            self.skip_ws()
        return out

    def parse_word(self) -> tuple:
        if self.peek() not in "Pp":
            self.error("expected 'P'")
        self.pos += 1
        self.skip_ws()
        self.expect("(")
        ks = self.parse_int_list()
        self.skip_ws()
        if self.peek() == ";":
            self.pos += 1
            ds = self.parse_int_list()
        else:
            ds = [0] * len(ks)
        self.skip_ws()
        self.expect(")")
        if len(ks) != len(ds):
            self.error(f"{len(ks)} upper entries vs {len(ds)} lower entries")
        return check_word(tuple(zip(ks, ds)))

    def parse_term(self):
        self.skip_ws()
        coeff = Rat(1)
        if self.peek().isdigit():
            coeff = self.parse_rational()
            self.skip_ws()
            if self.peek() == "*":
                self.pos += 1
                self.skip_ws()
            elif self.peek() not in "Pp":
                return coeff, ()  # bare rational means a multiple of the empty word
        if self.peek() in "Pp":
            word = self.parse_word()
            return coeff, word
        if coeff != 1:
            return coeff, ()
        self.error("expected a term")

    def parse(self) -> WordSum:
        out: dict = {}
        self.skip_ws()
        sign = Rat(1)
        if self.peek() in "+-":
            sign = Rat(-1) if self.peek() == "-" else Rat(1)
            self.pos += 1
        while True:
            coeff, word = self.parse_term()
            coeff = sign * coeff
            out[word] = out.get(word, Rat(0)) + coeff
            self.skip_ws()
            if self.pos >= len(self.text):
                break
            ch = self.peek()
            if ch not in "+-":
                self.error(f"unexpected {ch!r}")
            sign = Rat(-1) if ch == "-" else Rat(1)
            self.pos += 1
        return WordSum(out)


def parse_wordsum(text: str) -> WordSum:
    """Parse "P(2,3;0,0)", "4*P(3,1;0,0)+2*P(3;1)-2*P(3;0)", etc."""
    return _WordParser(text).parse()


# ---------------------------------------------------------------------------
# MZV values

def mzvlin_to_json(lin: MzvLin) -> dict:
    return {
        "terms": [
            {"index": list(idx), "coeff": rat_str(c)} for idx, c in lin.items()
        ]
    }


def mzvlin_from_json(doc: dict) -> MzvLin:
    out: dict = {}
    for term in doc["terms"]:
        idx = tuple(int(k) for k in term["index"])
        out[idx] = out.get(idx, Rat(0)) + Rat(term["coeff"])
    return MzvLin(out)


def bimzv_to_json(val: BiMzv) -> dict:
    terms = []
    for p, lin in enumerate(val.coeffs):
        for idx, c in lin.items():
            terms.append({"tpow": p, "index": list(idx), "coeff": rat_str(c)})
    return {"terms": terms}


def bimzv_from_json(doc: dict) -> BiMzv:
    buckets: dict = {}
    for term in doc["terms"]:
        p = int(term["tpow"])
        idx = tuple(int(k) for k in term["index"])
        bucket = buckets.setdefault(p, {})
        bucket[idx] = bucket.get(idx, Rat(0)) + Rat(term["coeff"])
    n = max(buckets, default=-1) + 1
    return BiMzv([MzvLin(buckets.get(p, {})) for p in range(n)])


# ---------------------------------------------------------------------------
# quasimodular polynomials

def quasimod_to_json(poly: QuasimodularPoly) -> dict:
    return {
        "terms": [
            {"g2": a, "g4": b, "g6": c, "coeff": rat_str(coeff)}
            for (a, b, c), coeff in poly.items()
        ]
    }


def quasimod_from_json(doc: dict) -> QuasimodularPoly:
    out: dict = {}
    for term in doc["terms"]:
        mono = (int(term["g2"]), int(term["g4"]), int(term["g6"]))
        out[mono] = out.get(mono, Rat(0)) + Rat(term["coeff"])
    return QuasimodularPoly(out)


# ---------------------------------------------------------------------------
# partition functions (tag union)

def partition_function_to_json(f: PartitionFunction) -> dict:
    if f.kind == "word":
        model, u = f.payload
        return {"kind": "word", **wordsum_to_json(model, u)}
    if f.kind == "expword":
        model, word = f.payload
        return {
            "kind": "expword",
            "model": model,
            "word": [[k, d] for k, d in word],
        }
    if f.kind == "shifted_symmetric_Q":
        return {"kind": "shifted_symmetric_Q", "k": f.payload}
    if f.kind == "armleg":
        return {"kind": "armleg", "a": f.payload[0], "b": f.payload[1]}
    if f.kind == "hook_moment":
        return {"kind": "hook_moment", "k": f.payload}
    if f.kind == "moebius":
        return {"kind": "moebius"}
    raise ValueError(f"cannot serialize a {f.kind} partition function")


def partition_function_from_json(doc: dict) -> PartitionFunction:
    kind = doc["kind"]
    if kind == "word":
        model, u = wordsum_from_json(doc)
        return PartitionFunction.word(model, u)
    if kind == "expword":
        word = tuple((int(k), int(d)) for k, d in doc["word"])
        return PartitionFunction.expword(doc.get("model", "seki"), word)
    if kind == "shifted_symmetric_Q":
        return PartitionFunction.shifted_symmetric_q(int(doc["k"]))
    if kind == "armleg":
        return PartitionFunction.armleg(int(doc["a"]), int(doc["b"]))
    if kind == "hook_moment":
        return PartitionFunction.hook_moment(int(doc["k"]))
    if kind == "moebius":
        return PartitionFunction.moebius_fn()
    raise ValueError(f"unknown partition function kind {kind!r}")
