"""The series-spec mini-language used on the command line.

Grammar (canonical forms):

    zeta
    zeta-minus-one
    power:t=<real>
    g:r=<real>
    ci:r=<real>
    cii:r=<real>
    kalmar:m=<int>
    recip:alpha=<real>,base=<spec>
    conv(<spec>,<spec>)

Parsing a canonical form and printing it back is the identity.  A recip
base is interpreted with its unit coefficient dropped, so
recip:alpha=1,base=conv(zeta,zeta) builds 1/(2 - zeta^2).
"""

from dataclasses import dataclass, field
from typing import Dict, Tuple

from .constructions import (
    construction_i_coeffs,
    construction_ii_coeffs,
    g_coeffs,
    kalmar_dm_coeffs,
)
from .errors import SeriesParseError
from .series import (
    _fmt_param,
    dirichlet_convolve,
    drop_unit,
    ones,
    power_shift,
    reciprocal_coeffs,
)

_SIMPLE = {"zeta", "zeta-minus-one", "power", "g", "ci", "cii", "kalmar", "recip"}
_PARAM_KEYS = {
    "power": ("t",),
    "g": ("r",),
    "ci": ("r",),
    "cii": ("r",),
    "kalmar": ("m",),
    "recip": ("alpha", "base"),
}


@dataclass
class SeriesNode:
    kind: str
    params: Dict[str, float] = field(default_factory=dict)
    children: Tuple["SeriesNode", ...] = ()

    def to_text(self):
        if self.kind == "conv":
            return f"conv({self.children[0].to_text()},{self.children[1].to_text()})"
        if self.kind == "recip":
            return (
                f"recip:alpha={_fmt_param(self.params['alpha'])},"
                f"base={self.children[0].to_text()}"
            )
        if not self.params:
            return self.kind
        parts = []
        for key in _PARAM_KEYS[self.kind]:
            value = self.params[key]
            parts.append(f"{key}={value if isinstance(value, int) else _fmt_param(value)}")
        return f"{self.kind}:" + ",".join(parts)


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            raise SeriesParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def name(self):
        start = self.pos
        while self.peek() and (self.peek().isalnum() or self.peek() in "-_"):
            self.pos += 1
        word = self.text[start : self.pos]
        if not word:
            raise SeriesParseError("expected a series name", start)
        return word, start

    def number(self):
        start = self.pos
        while self.peek() and (self.peek().isdigit() or self.peek() in "+-.eE"):
            self.pos += 1
        chunk = self.text[start : self.pos]
        try:
            return float(chunk)
        except ValueError:
            raise SeriesParseError(f"bad number {chunk!r}", start) from None


def parse_series_spec(text):
    """Parse a spec string into a SeriesNode tree (errors carry a position)."""
    if not text or not text.strip():
        raise SeriesParseError("empty series spec", 0)
    scanner = _Scanner(text.strip())
    node = _parse(scanner)
    if scanner.pos != len(scanner.text):
        raise SeriesParseError("trailing input after series spec", scanner.pos)
    return node


def _parse(scanner):
    word, start = scanner.name()
    if word == "conv":
        scanner.expect("(")
        left = _parse(scanner)
        scanner.expect(",")
        right = _parse(scanner)
        scanner.expect(")")
        return SeriesNode("conv", {}, (left, right))
    if word not in _SIMPLE:
        raise SeriesParseError(f"unknown series name {word!r}", start)
    if word in ("zeta", "zeta-minus-one"):
        return SeriesNode(word)
    scanner.expect(":")
    keys = _PARAM_KEYS[word]
    params = {}
    children = ()
    for i, key in enumerate(keys):
        if i:
            scanner.expect(",")
        got, kstart = scanner.name()
        if got != key:
            raise SeriesParseError(f"expected parameter {key!r}, got {got!r}", kstart)
        scanner.expect("=")
        if key == "base":
            children = (_parse(scanner),)
        elif key == "m":
            value = scanner.number()
            if not value.is_integer():
                raise SeriesParseError("m must be an integer", scanner.pos)
            params[key] = int(value)
        else:
            params[key] = scanner.number()
    return SeriesNode(word, params, children)


def build_sequence(node):
    """Materializable coefficient sequence for a parsed spec tree."""
    if node.kind == "zeta":
        return ones()
    if node.kind == "zeta-minus-one":
        return drop_unit(ones(), label="zeta-minus-one")
    if node.kind == "power":
        return power_shift(node.params["t"])
    if node.kind == "g":
        return g_coeffs(node.params["r"])
    if node.kind == "ci":
        return construction_i_coeffs(node.params["r"])
    if node.kind == "cii":
        return construction_ii_coeffs(node.params["r"])
    if node.kind == "kalmar":
        return kalmar_dm_coeffs(node.params["m"])
    if node.kind == "conv":
        return dirichlet_convolve(
            build_sequence(node.children[0]), build_sequence(node.children[1])
        )
    if node.kind == "recip":
        base = drop_unit(build_sequence(node.children[0]))
        return reciprocal_coeffs(node.params["alpha"], base, label=node.to_text())
    raise SeriesParseError(f"unknown node kind {node.kind!r}", 0)


def build_base_sequence(node):
    """The unit-dropped base g of a recip node (for root-finding commands)."""
    if node.kind != "recip":
        raise ValueError("root finding needs a recip:... series spec")
    return drop_unit(build_sequence(node.children[0]))


def zeta_power_of(node):
    """If node is zeta / zeta-minus-one / conv tree of zetas, its power m."""
    if node.kind in ("zeta", "zeta-minus-one"):
        return 1
    if node.kind == "conv":
        left = zeta_power_of(node.children[0])
        right = zeta_power_of(node.children[1])
        if left and right:
            return left + right
    return None
