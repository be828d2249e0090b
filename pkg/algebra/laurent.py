"""Exact Laurent polynomials over the integers.

Variables are partitions (face variables x_mu, Plucker variables p_mu) plus the
quantum parameter q. A polynomial is a sparse map from monomials to nonzero
integer coefficients; a monomial is a sorted tuple of (variable, exponent)
pairs with nonzero exponents.
"""

from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import ZZ
from sympy.polys.orderings import lex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import ring

from plabic.partitions import Partition

Q = "q"
Variable = Union[Partition, str]
Monomial = Tuple[Tuple[Variable, int], ...]


class InexactDivisionError(ArithmeticError):
    """Raised when a quotient of Laurent polynomials is not a Laurent polynomial."""


def variable_key(v: Variable):
    if isinstance(v, Partition):
        return (0, v.size, v.parts)
    if v == Q:
        return (1, 0, ())
    raise TypeError(f"Unknown variable: {v!r}")


def default_order(variables: Iterable[Variable]) -> List[Partition]:
    """Longest partitions first, then larger parts first; q is left out.

    For Gr(3,5) this gives (3,3) < (2,2) < (1,1) < (3) < (2) < (1).
    """
    parts = {v for v in variables if isinstance(v, Partition)}
    return sorted(parts, key=lambda p: (-p.length, tuple(-x for x in p.parts)))


def variable_name(v: Variable, prefix: str) -> str:
    if v == Q:
        return "q"
    return f"{prefix}[{v.name}]"


def parse_variable(name: str) -> Variable:
    return Q if name == Q else Partition.parse(name)


def _monomial(exponents: Mapping[Variable, int]) -> Monomial:
    return tuple(
        sorted(((v, int(e)) for v, e in exponents.items() if e), key=lambda item: variable_key(item[0]))
    )


def _mono_mul(a: Monomial, b: Monomial, sign: int = 1) -> Monomial:
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + sign * e
    return _monomial(exps)


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        clean: Dict[Monomial, int] = {}
        for mono, coeff in (terms or {}).items():
            coeff = int(coeff)
            if coeff:
                key = _monomial(dict(mono))
                clean[key] = clean.get(key, 0) + coeff
                if not clean[key]:
                    del clean[key]
        self._terms = clean
        self._hash = None

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({(): c})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls.constant(1)

    @classmethod
    def variable(cls, v: Variable, exponent: int = 1) -> "LaurentPoly":
        return cls({((v, exponent),): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[Variable, int], coeff: int = 1) -> "LaurentPoly":
        return cls({_monomial(exponents): coeff})

    def items(self):
        return self._terms.items()

    def monomials(self) -> List[Monomial]:
        return list(self._terms)

    def coefficient(self, exponents: Mapping[Variable, int]) -> int:
        return self._terms.get(_monomial(exponents), 0)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def variables(self) -> set:
        return {v for mono in self._terms for v, _ in mono}

    def exponent_range(self, v: Variable) -> Tuple[int, int]:
        exps = [dict(mono).get(v, 0) for mono in self._terms]
        return (min(exps), max(exps)) if exps else (0, 0)

    def coefficients(self) -> List[int]:
        return list(self._terms.values())

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        raise TypeError(f"Cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            terms[mono] = terms.get(mono, 0) + coeff
        return LaurentPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms: Dict[Monomial, int] = {}
        for (ma, ca), (mb, cb) in product(self._terms.items(), other._terms.items()):
            mono = _mono_mul(ma, mb)
            terms[mono] = terms.get(mono, 0) + ca * cb
        return LaurentPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            if not self.is_monomial():
                raise InexactDivisionError(f"Negative power of a non-monomial: {self}")
            (mono, coeff), = self._terms.items()
            if abs(coeff) != 1:
                raise InexactDivisionError(f"Negative power of {self} has rational coefficients")
            return LaurentPoly({tuple((v, e * exponent) for v, e in mono): coeff ** abs(exponent)})
        result = LaurentPoly.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def split_content(self) -> Tuple[Dict[Variable, int], "LaurentPoly"]:
        """Factor self as x^content * rest, where rest is a polynomial no variable divides."""
        if self.is_zero():
            return {}, self
        content = {v: self.exponent_range(v)[0] for v in self.variables()}
        shift = _monomial(content)
        rest = LaurentPoly({_mono_mul(m, shift, -1): c for m, c in self._terms.items()})
        return content, rest

    def evaluate(self, values: Mapping[Variable, Fraction]) -> Fraction:
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            term = Fraction(coeff)
            for v, e in mono:
                term *= Fraction(values[v]) ** e
            total += term
        return total

    def sorted_terms(self) -> List[Tuple[Monomial, int]]:
        """Terms by total degree, then by variable order."""

        def key(item):
            mono, _ = item
            return (sum(e for _, e in mono), [(variable_key(v), e) for v, e in mono])

        return sorted(self._terms.items(), key=key)

    def to_text(self, prefix: str = "x") -> str:
        """Factored text form, e.g. x[3]*x[2,2]*x[3,3]*(1+x[2])."""
        if self.is_zero():
            return "0"
        if self.is_monomial():
            (mono, coeff), = self._terms.items()
            return _term_text(mono, coeff, prefix, leading=True)
        content, rest = self.split_content()
        inner = "".join(
            _term_text(mono, coeff, prefix, leading=(i == 0))
            for i, (mono, coeff) in enumerate(rest.sorted_terms())
        )
        factor = _monomial(content)
        if not factor:
            return inner
        return "*".join(_power_text(v, e, prefix) for v, e in factor) + f"*({inner})"

    def to_fraction_text(self, prefix: str = "p") -> str:
        """One numerator/denominator fraction per term, joined by ' + '."""
        if self.is_zero():
            return "0"
        pieces = []
        for mono, coeff in self.sorted_fraction_terms():
            num = [_power_text(v, e, prefix) for v, e in mono if e > 0 and v == Q]
            num += [_power_text(v, e, prefix) for v, e in mono if e > 0 and v != Q]
            den = [_power_text(v, -e, prefix) for v, e in mono if e < 0]
            if coeff != 1 or not num:
                num.insert(0, str(coeff))
            text = "*".join(num)
            if den:
                text += "/" + (den[0] if len(den) == 1 else "(" + "*".join(den) + ")")
            pieces.append(text)
        return " + ".join(pieces)

    def sorted_fraction_terms(self) -> List[Tuple[Monomial, int]]:
        def key(item):
            mono, _ = item
            q_degree = dict(mono).get(Q, 0)
            return (q_degree, [(variable_key(v), e) for v, e in mono if v != Q])

        return sorted(self._terms.items(), key=key)

    def to_json(self) -> List[dict]:
        return [
            {"exponents": {(v if v == Q else v.name): e for v, e in mono}, "coeff": str(coeff)}
            for mono, coeff in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: Sequence[dict]) -> "LaurentPoly":
        return cls(
            {
                _monomial({parse_variable(name): e for name, e in entry["exponents"].items()}): int(entry["coeff"])
                for entry in data
            }
        )

    def __repr__(self):
        return f"LaurentPoly({self.to_text()})"


def _power_text(v: Variable, e: int, prefix: str) -> str:
    name = variable_name(v, prefix)
    return name if e == 1 else f"{name}^{e}"


def _term_text(mono: Monomial, coeff: int, prefix: str, leading: bool) -> str:
    sign = "-" if coeff < 0 else ("" if leading else "+")
    magnitude = abs(coeff)
    factors = [_power_text(v, e, prefix) for v, e in mono]
    if not factors:
        return f"{sign}{magnitude}"
    if magnitude != 1:
        factors.insert(0, str(magnitude))
    return sign + "*".join(factors)


def exact_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Return h with f = g*h, or raise InexactDivisionError.

    Monomial divisors only need coefficient divisibility. Otherwise both sides
    are stripped of their monomial content; the quotient is Laurent exactly when
    the stripped divisor divides the stripped dividend as ordinary polynomials.
    """
    if g.is_zero():
        raise ZeroDivisionError("Division by the zero Laurent polynomial")
    if f.is_zero():
        return LaurentPoly.zero()
    if g.is_monomial():
        (g_mono, g_coeff), = g.items()
        terms = {}
        for mono, coeff in f.items():
            quotient, remainder = divmod(coeff, g_coeff)
            if remainder:
                raise InexactDivisionError(f"{coeff} is not divisible by {g_coeff}")
            terms[_mono_mul(mono, g_mono, -1)] = quotient
        return LaurentPoly(terms)

    f_content, f_rest = f.split_content()
    g_content, g_rest = g.split_content()
    variables = sorted(f_rest.variables() | g_rest.variables(), key=variable_key)
    R, *_ = ring(",".join(f"v{i}" for i in range(len(variables))), ZZ, lex)

    def to_ring(poly: LaurentPoly):
        return R.from_dict(
            {tuple(dict(mono).get(v, 0) for v in variables): coeff for mono, coeff in poly.items()}
        )

    try:
        h = to_ring(f_rest).exquo(to_ring(g_rest))
    except ExactQuotientFailed:
        raise InexactDivisionError(f"{g.to_text()} does not divide {f.to_text()}")

    shift = dict(f_content)
    for v, e in g_content.items():
        shift[v] = shift.get(v, 0) - e
    return LaurentPoly(
        {
            _mono_mul(tuple(zip(variables, exps)), _monomial(shift)): int(coeff)
            for exps, coeff in h.terms()
        }
    )


def substitute(f: LaurentPoly, v: Variable, replacement: LaurentPoly, divisor: LaurentPoly) -> LaurentPoly:
    """Replace v by replacement/divisor in f and clear denominators exactly."""
    if v not in f.variables():
        return f
    emin, emax = f.exponent_range(v)
    numerator = LaurentPoly.zero()
    for mono, coeff in f.items():
        e = dict(mono).get(v, 0)
        rest = LaurentPoly({tuple((w, x) for w, x in mono if w != v): coeff})
        numerator = numerator + rest * replacement ** (e - emin) * divisor ** (emax - e)
    numerator = numerator * replacement ** max(emin, 0) * divisor ** max(-emax, 0)
    denominator = replacement ** max(-emin, 0) * divisor ** max(emax, 0)
    return exact_div(numerator, denominator)


def exponent_vectors(f: LaurentPoly, order: Sequence[Partition]) -> List[Tuple[int, ...]]:
    index = set(order)
    vectors = []
    for mono, _ in f.items():
        exps = dict(mono)
        stray = [v for v in exps if v != Q and v not in index]
        if stray:
            raise ValueError(f"Variables {stray} are missing from the order")
        vectors.append(tuple(exps.get(v, 0) for v in order))
    return vectors


def lex_min_term(f: LaurentPoly, order: Sequence[Partition]) -> Tuple[int, ...]:
    """Exponent vector of the lexicographically minimal term; q is ignored."""
    if f.is_zero():
        raise ValueError("The zero polynomial has no minimal term")
    return min(exponent_vectors(f, order))


def strongly_minimal_term(f: LaurentPoly, order: Optional[Sequence[Partition]] = None) -> Optional[Tuple[int, ...]]:
    """The exponent vector componentwise below every other one, if there is one."""
    if f.is_zero():
        raise ValueError("The zero polynomial has no minimal term")
    if order is None:
        order = default_order(f.variables())
    vectors = exponent_vectors(f, order)
    candidate = tuple(min(column) for column in zip(*vectors)) if order else ()
    return candidate if candidate in vectors else None
