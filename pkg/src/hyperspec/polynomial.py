"""Exact integer polynomials and largest-real-root bracketing."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ContractError


def _trim(cs: Sequence) -> tuple:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients stored lowest degree first."""

    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        cs = _trim(int(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", cs)

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, _coerce(other).coefficients
        n = max(len(a), len(b))
        return IntPolynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other) -> "IntPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "IntPolynomial":
        return _coerce(other) - self

    def __mul__(self, other) -> "IntPolynomial":
        a, b = self.coefficients, _coerce(other).coefficients
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, t):
        acc = 0 * t
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coefficients) if i))

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for d in range(self.degree, -1, -1):
            c = self.coefficients[d]
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if d == 1 else f"x^{d}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        head_sign, head = terms[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def _coerce(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial((p,))
    raise TypeError(f"cannot combine IntPolynomial with {type(p).__name__}")


# -- rational helpers for root isolation -------------------------------------

def _rdivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, bc in enumerate(b):
            a[i + shift] -= f * bc
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _rgcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b:
        _, r = _rdivmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def _reval(p: Sequence[Fraction], t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * t + c
    return acc


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def square_free_part(p: IntPolynomial) -> list[Fraction]:
    a = [Fraction(c) for c in p.coefficients]
    da = [Fraction(c) for c in p.derivative().coefficients]
    if not da:
        return a
    g = _rgcd(a, da)
    q, _ = _rdivmod(a, g)
    return list(_trim(q))


def _sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    chain = [p, [i * c for i, c in enumerate(p) if i]]
    while chain[-1] and len(chain[-1]) > 1:
        _, r = _rdivmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _variations(chain, t: Fraction) -> int:
    signs = [s for s in (_sign(_reval(p, t)) for p in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(p: IntPolynomial) -> float:
    """Cauchy bound: every real root lies in ``[-B, B]``."""
    lead = abs(p.leading)
    return 1.0 + max((abs(c) / lead for c in p.coefficients[:-1]), default=0.0)


def largest_root(p: IntPolynomial, tol: float = 1e-12) -> float:
    """Largest real root of ``p`` to within ``tol``.

    The square-free part is formed first so every root is a sign change.
    A Sturm chain isolates the largest root inside the Cauchy bound, then
    plain bisection on exact rational signs narrows the bracket.
    """
    if p.degree < 1:
        raise ContractError("largest_root needs a polynomial of degree >= 1")
    q = square_free_part(p)
    bound = Fraction(root_bound(p)).limit_denominator(1) + 1
    lo, hi = -bound, bound
    chain = _sturm_chain(q)
    count = _variations(chain, lo) - _variations(chain, hi)
    if count == 0:
        raise ContractError(f"no sign change found for {p}: no real root")
    while count > 1:
        mid = (lo + hi) / 2
        above = _variations(chain, mid) - _variations(chain, hi)
        if above >= 1:
            lo, count = mid, above
        else:
            hi = mid
    flo, fhi = float(lo), float(hi)
    s_hi = _sign(_reval(q, Fraction(fhi)))
    if s_hi == 0:
        return fhi
    if _sign(_reval(q, Fraction(flo))) == s_hi:
        raise ContractError(f"no sign change found for {p} on [{flo}, {fhi}]")
    while fhi - flo > tol:
        mid = 0.5 * (flo + fhi)
        if mid in (flo, fhi):
            break
        s = _sign(_reval(q, Fraction(mid)))
        if s == 0:
            return mid
        if s == s_hi:
            fhi = mid
        else:
            flo = mid
    return 0.5 * (flo + fhi)


def substitute_square(poly_in_t: Iterable[int]) -> IntPolynomial:
    """Substitute ``t = x^2`` into a polynomial given in ``t`` (low first)."""
    out = []
    for c in poly_in_t:
        out.extend([c, 0])
    return IntPolynomial(tuple(out))
