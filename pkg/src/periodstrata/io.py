"""Family files, ring literals and polynomial expression parsing.

A family file is a JSON document::

    {
      "ring": {"kind": "poly", "var": "x"},
      "rank": 2,
      "depth": 2,
      "blocks": [[["0", "0"], ["0", "-1"]], [["0", "0"], ["x", "0"]]],
      "meta": {"name": "running example"}
    }

Ring literals are ``{"kind": "rationals"}``, ``{"kind": "poly", "var": v}``
or ``{"kind": "quotient", "var": v, "modulus": [c0, c1, ...]}`` with the
modulus coefficients lowest degree first.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .family import DifTower
from .matrices import MatrixOverRing
from .rings import RATIONALS, RingDescriptor, UniPoly, poly_ring, quotient_ring, rat

__all__ = [
    "InputError",
    "parse_poly",
    "parse_ring",
    "ring_to_obj",
    "parse_family_file",
    "serialize_family",
    "read_family",
]


class InputError(ValueError):
    """Malformed input, with a location when one is known."""

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", num, start))
        elif name is not None:
            out.append(("name", name, start))
        else:
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, var: str | None):
        self.text = text
        self.var = var
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise InputError(f"{msg} at column {tok[2] + 1} in {self.text!r}")

    def parse(self) -> UniPoly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self) -> UniPoly:
        p = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> UniPoly:
        p = self.unary()
        while True:
            kind, val, _ = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                p = p * self.unary()
            elif (kind, val) == ("op", "/"):
                tok = self.take()
                q = self.unary()
                if q.degree != 0:
                    self.fail("division only by a nonzero rational constant", tok)
                p = p * (1 / q.coeffs[0])
            elif kind in ("num", "name") or (kind, val) == ("op", "("):
                p = p * self.power()  # implicit product such as 2x
            else:
                return p

    def unary(self) -> UniPoly:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> UniPoly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("exponent must be a nonnegative integer", tok)
            return base ** int(tok[1])
        return base

    def atom(self) -> UniPoly:
        kind, val, pos = tok = self.take()
        if kind == "num":
            return UniPoly.const(int(val))
        if kind == "name":
            if self.var is None:
                self.fail(f"variable {val!r} not allowed in a rational entry", tok)
            if val != self.var:
                self.fail(f"unknown variable {val!r} (ring variable is {self.var!r})", tok)
            return UniPoly((0, 1))
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take()[:2] != ("op", ")"):
                self.fail("missing ')'", tok)
            return p
        self.fail(f"unexpected {val or 'end of input'!r}", tok)


def parse_poly(text: str, var: str | None = "x") -> UniPoly:
    """Parse ``"3/2*x^2 - x + 1"``-style expressions; ``var=None`` allows constants only."""
    if not isinstance(text, str):
        raise InputError(f"expected a string expression, got {text!r}")
    return _Parser(text, var).parse()


def parse_ring(obj: Any, where: str = "ring") -> RingDescriptor:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("ring literal must be an object with a 'kind'", where)
    kind = obj["kind"]
    var = obj.get("var", "x")
    if not isinstance(var, str) or not re.fullmatch(r"[A-Za-z_]\w*", var):
        raise InputError(f"bad variable name {var!r}", where)
    if kind == "rationals":
        return RATIONALS
    if kind == "poly":
        return poly_ring(var)
    if kind == "quotient":
        mod = obj.get("modulus")
        if not isinstance(mod, list) or not mod:
            raise InputError("quotient ring needs a nonempty 'modulus' coefficient list", where)
        try:
            p = UniPoly(rat(str(c)) for c in mod)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"bad modulus coefficient: {exc}", where) from None
        if p.degree < 1 or p.lc != 1:
            raise InputError("quotient modulus must be monic of degree >= 1", where)
        return quotient_ring(p, var)
    raise InputError(f"unknown ring kind {kind!r}", where)


def ring_to_obj(ring: RingDescriptor) -> dict:
    if ring.is_rationals:
        return {"kind": "rationals"}
    if ring.is_poly:
        return {"kind": "poly", "var": ring.var}
    return {"kind": "quotient", "var": ring.var, "modulus": [str(c) for c in ring.modulus.coeffs]}


def parse_family_file(text: str) -> tuple[DifTower, dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"syntax error: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise InputError("family file must be a JSON object")
    unknown = set(doc) - {"ring", "rank", "depth", "blocks", "meta"}
    if unknown:
        raise InputError(f"unknown keys {sorted(unknown)}")
    for key in ("ring", "rank", "depth", "blocks"):
        if key not in doc:
            raise InputError(f"missing key {key!r}")
    ring = parse_ring(doc["ring"])
    rank, depth, blocks = doc["rank"], doc["depth"], doc["blocks"]
    if not isinstance(rank, int) or rank < 1:
        raise InputError("rank must be a positive integer", "rank")
    if not isinstance(depth, int) or depth < 1:
        raise InputError("depth must be a positive integer", "depth")
    if not isinstance(blocks, list) or len(blocks) != depth:
        raise InputError(f"expected {depth} blocks", "blocks")
    mats = []
    var = None if ring.is_rationals else ring.var
    for s, blk in enumerate(blocks):
        where = f"blocks[{s}]"
        if not isinstance(blk, list) or len(blk) != rank or any(
                not isinstance(r, list) or len(r) != rank for r in blk):
            shape = f"{len(blk)}x{len(blk[0]) if blk and isinstance(blk[0], list) else '?'}" \
                if isinstance(blk, list) else "non-list"
            raise InputError(f"block {s} must be {rank}x{rank}, got {shape}", where)
        grid = []
        for i, row in enumerate(blk):
            out = []
            for j, entry in enumerate(row):
                try:
                    out.append(parse_poly(str(entry) if isinstance(entry, int) else entry, var))
                except InputError as exc:
                    raise InputError(str(exc), f"{where}[{i}][{j}]") from None
            grid.append(out)
        mats.append(MatrixOverRing(ring, rank, rank, grid))
    meta = doc.get("meta", {}) or {}
    if not isinstance(meta, dict):
        raise InputError("meta must be an object", "meta")
    return DifTower(ring, rank, depth, tuple(mats)), meta


def serialize_family(T: DifTower, meta: dict | None = None) -> str:
    var = T.ring.var
    doc = {
        "ring": ring_to_obj(T.ring),
        "rank": T.rank,
        "depth": T.depth,
        "blocks": [[[v.to_string(var) for v in row] for row in b.values] for b in T.blocks],
    }
    if meta:
        doc["meta"] = meta
    return json.dumps(doc, indent=2) + "\n"


def read_family(path: str) -> tuple[DifTower, dict]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_family_file(text)
