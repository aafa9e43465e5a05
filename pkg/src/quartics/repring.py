"""Exact arithmetic in the representation ring of a diagonal torus.

A diagonal torus T = (C*)^(n+1) acts on homogeneous coordinates x0..xn.
Its characters are Laurent monomials in the coordinate characters
lambda_0..lambda_n; we record a character as an integer exponent vector
(`LaurentMonomial`).  A finite-dimensional T-representation splits into
one-dimensional character spaces, so it is faithfully described by a
finite formal integer combination of Laurent monomials (`RepElement`).
Differences of representations are meaningful intermediate values, hence
multiplicities may be negative.

The ambient geometry is the weighted projective space P(2,1,...,1),
realized as the quotient of ordinary projective n-space by the order-two
group Gamma that negates x0.  Sections of O(m) on the quotient correspond
to degree-m monomials with even x0-exponent (Gamma-invariant monomials);
these span the spaces V[m] returned by `invariant_sections`.

Torus-fixed curves have monomial graded ideals (`MonomialIdeal`); the
degree-k slice of such an ideal inside the invariant ring is returned by
`ideal_twist`.  All values are immutable and all operations are pure.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

_FACTOR_RE = re.compile(r"x(\d+)(?:\^(-?\d+))?\Z")

# Index and order of the quotient group action: Gamma negates x0, so a
# monomial is Gamma-invariant iff its x0-exponent is divisible by 2.  Kept
# as module constants so the kernel stays reusable for other cyclic
# quotients; nothing else in the package changes them.
INVARIANT_INDEX = 0
INVARIANT_ORDER = 2


class LaurentMonomial:
    """A Laurent monomial in the characters lambda_0..lambda_n.

    Immutable; identified by its integer exponent vector.  The vector
    length is the number of characters of the ambient torus, and mixing
    lengths in arithmetic is an error.

    >>> m = LaurentMonomial((2, -1, 0, 0))
    >>> str(m)
    'x0^2*x1^-1'
    >>> m * LaurentMonomial((0, 1, 0, 0))
    LaurentMonomial('x0^2')
    """

    __slots__ = ("exps",)

    def __init__(self, exps: Iterable[int]):
        object.__setattr__(self, "exps", tuple(int(e) for e in exps))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("LaurentMonomial is immutable")

    # -- basic queries -------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.exps)

    @property
    def degree(self) -> int:
        """Total degree (sum of exponents; may be negative or zero)."""
        return sum(self.exps)

    def is_regular(self) -> bool:
        """True when all exponents are >= 0 (an ordinary monomial)."""
        return all(e >= 0 for e in self.exps)

    def is_trivial(self) -> bool:
        """True for the trivial character (all exponents zero)."""
        return not any(self.exps)

    def is_invariant(self) -> bool:
        """True when the monomial is fixed by the quotient group Gamma."""
        return self.exps[INVARIANT_INDEX] % INVARIANT_ORDER == 0

    # -- arithmetic ----------------------------------------------------

    def _require_same_ring(self, other: "LaurentMonomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError(
                f"mismatched character count: {self.nvars} vs {other.nvars}"
            )

    def __mul__(self, other: "LaurentMonomial") -> "LaurentMonomial":
        self._require_same_ring(other)
        return LaurentMonomial(a + b for a, b in zip(self.exps, other.exps))

    def __truediv__(self, other: "LaurentMonomial") -> "LaurentMonomial":
        self._require_same_ring(other)
        return LaurentMonomial(a - b for a, b in zip(self.exps, other.exps))

    def __pow__(self, k: int) -> "LaurentMonomial":
        return LaurentMonomial(e * k for e in self.exps)

    def inverse(self) -> "LaurentMonomial":
        return LaurentMonomial(-e for e in self.exps)

    def divides(self, other: "LaurentMonomial") -> bool:
        """True when other/self has no negative exponent."""
        self._require_same_ring(other)
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def lcm(self, other: "LaurentMonomial") -> "LaurentMonomial":
        self._require_same_ring(other)
        return LaurentMonomial(max(a, b) for a, b in zip(self.exps, other.exps))

    def gcd(self, other: "LaurentMonomial") -> "LaurentMonomial":
        self._require_same_ring(other)
        return LaurentMonomial(min(a, b) for a, b in zip(self.exps, other.exps))

    def remap(self, mapping: Mapping[int, int], nvars: int) -> "LaurentMonomial":
        """Carry the monomial into another ring along an index mapping.

        `mapping` sends each old character index to a new one; indices
        with zero exponent may be omitted from the mapping.
        """
        exps = [0] * nvars
        for i, e in enumerate(self.exps):
            if e:
                exps[mapping[i]] += e
        return LaurentMonomial(exps)

    # -- identity and ordering ------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentMonomial) and self.exps == other.exps

    def __hash__(self) -> int:
        return hash(self.exps)

    def __lt__(self, other: "LaurentMonomial") -> bool:
        # Canonical order: descending lexicographic on exponent vectors,
        # so x0^2 sorts before x1^2 sorts before x1*x2.  Fixed once for
        # deterministic serialization and test comparison.
        self._require_same_ring(other)
        return self.exps > other.exps

    def __le__(self, other: "LaurentMonomial") -> bool:
        return self == other or self < other

    # -- rendering -------------------------------------------------------

    def __str__(self) -> str:
        factors = [
            f"x{i}" if e == 1 else f"x{i}^{e}"
            for i, e in enumerate(self.exps)
            if e
        ]
        return "*".join(factors) if factors else "1"

    def __repr__(self) -> str:
        return f"LaurentMonomial('{self}')"

    @classmethod
    def parse(cls, text: str, nvars: int) -> "LaurentMonomial":
        """Inverse of `str`: parse 'x0^2*x1^-1' into a monomial.

        >>> LaurentMonomial.parse("x0^2*x1^-1", 4)
        LaurentMonomial('x0^2*x1^-1')
        >>> LaurentMonomial.parse("1", 4).is_trivial()
        True
        """
        text = text.strip()
        exps = [0] * nvars
        if text == "1":
            return cls(exps)
        for factor in text.split("*"):
            match = _FACTOR_RE.match(factor.strip())
            if match is None:
                raise ValueError(f"malformed monomial factor: {factor!r}")
            index = int(match.group(1))
            if index >= nvars:
                raise ValueError(f"character index {index} out of range: {text!r}")
            exps[index] += int(match.group(2)) if match.group(2) else 1
        return cls(exps)


class RepElement:
    """An element of the representation ring: monomial -> multiplicity.

    Stores only nonzero multiplicities.  Supports ring arithmetic (+, -, *)
    and dualization (inverting every character).  The empty element is the
    zero of the ring and is compatible with any character count.

    >>> a = RepElement({LaurentMonomial((0, 1, -1, 0)): 1})
    >>> (a + a).dimension
    2
    >>> (a - a).is_zero()
    True
    """

    __slots__ = ("_terms",)

    def __init__(
        self,
        terms: Mapping[LaurentMonomial, int] | Iterable[tuple[LaurentMonomial, int]] = (),
    ):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[LaurentMonomial, int] = {}
        nvars: int | None = None
        for monomial, mult in items:
            if nvars is None:
                nvars = monomial.nvars
            elif monomial.nvars != nvars:
                raise ValueError(
                    f"mismatched character count: {monomial.nvars} vs {nvars}"
                )
            new = acc.get(monomial, 0) + int(mult)
            if new:
                acc[monomial] = new
            else:
                acc.pop(monomial, None)
        object.__setattr__(self, "_terms", acc)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("RepElement is immutable")

    @classmethod
    def from_monomials(cls, monomials: Iterable[LaurentMonomial]) -> "RepElement":
        """Multiplicity-1 sum of the given monomials."""
        return cls((m, 1) for m in monomials)

    # -- queries ---------------------------------------------------------

    @property
    def nvars(self) -> int | None:
        """Character count, or None for the zero element."""
        for monomial in self._terms:
            return monomial.nvars
        return None

    @property
    def dimension(self) -> int:
        """Total multiplicity (virtual dimension; may be negative)."""
        return sum(self._terms.values())

    def is_zero(self) -> bool:
        return not self._terms

    def multiplicity(self, monomial: LaurentMonomial) -> int:
        return self._terms.get(monomial, 0)

    def __contains__(self, monomial: LaurentMonomial) -> bool:
        return monomial in self._terms

    def items(self) -> list[tuple[LaurentMonomial, int]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda t: t[0].exps, reverse=True)

    def support(self) -> list[LaurentMonomial]:
        """Monomials with nonzero multiplicity, in canonical order."""
        return sorted(self._terms, key=lambda m: m.exps, reverse=True)

    def __iter__(self) -> Iterator[LaurentMonomial]:
        return iter(self.support())

    def __len__(self) -> int:
        return len(self._terms)

    def contains_trivial(self) -> bool:
        for monomial in self._terms:
            if monomial.is_trivial():
                return True
        return False

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other: "RepElement") -> None:
        a, b = self.nvars, other.nvars
        if a is not None and b is not None and a != b:
            raise ValueError(f"mismatched character count: {a} vs {b}")

    def __add__(self, other: "RepElement") -> "RepElement":
        self._check_compatible(other)
        acc = dict(self._terms)
        for monomial, mult in other._terms.items():
            new = acc.get(monomial, 0) + mult
            if new:
                acc[monomial] = new
            else:
                acc.pop(monomial, None)
        return RepElement(acc)

    def __sub__(self, other: "RepElement") -> "RepElement":
        return self + other.negate()

    def negate(self) -> "RepElement":
        return RepElement({m: -k for m, k in self._terms.items()})

    def __mul__(self, other: "RepElement") -> "RepElement":
        self._check_compatible(other)
        acc: dict[LaurentMonomial, int] = {}
        for m1, k1 in self._terms.items():
            for m2, k2 in other._terms.items():
                product = m1 * m2
                new = acc.get(product, 0) + k1 * k2
                if new:
                    acc[product] = new
                else:
                    acc.pop(product, None)
        return RepElement(acc)

    def dual(self) -> "RepElement":
        """Invert every character; multiplicities are preserved."""
        return RepElement({m.inverse(): k for m, k in self._terms.items()})

    def remap(self, mapping: Mapping[int, int], nvars: int) -> "RepElement":
        """Carry every term into another ring along an index mapping."""
        return RepElement(
            (m.remap(mapping, nvars), k) for m, k in self._terms.items()
        )

    # -- identity and rendering ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RepElement) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for monomial, mult in self.items():
            body = str(monomial)
            if abs(mult) != 1:
                body = f"{abs(mult)}*{body}"
            if not parts:
                parts.append(body if mult > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if mult > 0 else '-'} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"RepElement({self})"


class MonomialIdeal:
    """A monomial ideal given by a reduced finite generator set.

    Generators are ordinary (nonnegative-exponent) monomials; the
    constructor drops any generator divisible by another, so no generator
    divides a different one.  Ideals of Gamma-fixed curves have all
    generators Gamma-invariant; this is checked by default.

    >>> I = MonomialIdeal.of(4, "x1*x2", "x1*x3")
    >>> str(I)
    '(x1*x2, x1*x3)'
    >>> I.contains(LaurentMonomial.parse("x1^2*x2", 4))
    True
    """

    __slots__ = ("generators",)

    def __init__(
        self, generators: Iterable[LaurentMonomial], *, require_invariant: bool = True
    ):
        gens = list(dict.fromkeys(generators))
        nvars: int | None = None
        for g in gens:
            if nvars is None:
                nvars = g.nvars
            elif g.nvars != nvars:
                raise ValueError(
                    f"mismatched character count: {g.nvars} vs {nvars}"
                )
            if not g.is_regular():
                raise ValueError(f"ideal generator has a negative exponent: {g}")
            if require_invariant and not g.is_invariant():
                raise ValueError(f"ideal generator is not Gamma-invariant: {g}")
        reduced = [
            g
            for g in gens
            if not any(h is not g and h.divides(g) for h in gens)
        ]
        reduced.sort(key=lambda m: m.exps, reverse=True)
        object.__setattr__(self, "generators", tuple(reduced))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("MonomialIdeal is immutable")

    @classmethod
    def of(cls, nvars: int, *texts: str, require_invariant: bool = True) -> "MonomialIdeal":
        """Convenience constructor from monomial strings."""
        return cls(
            (LaurentMonomial.parse(t, nvars) for t in texts),
            require_invariant=require_invariant,
        )

    # -- queries -----------------------------------------------------------

    @property
    def nvars(self) -> int:
        if not self.generators:
            raise ValueError("empty ideal has no ring context")
        return self.generators[0].nvars

    def contains(self, monomial: LaurentMonomial) -> bool:
        return any(g.divides(monomial) for g in self.generators)

    def common_factor(self) -> LaurentMonomial:
        """Entrywise gcd of all generators."""
        gens = self.generators
        acc = gens[0]
        for g in gens[1:]:
            acc = acc.gcd(g)
        return acc

    def has_common_factor(self) -> bool:
        """True when all generators share a nontrivial monomial factor."""
        return not self.common_factor().is_trivial()

    def with_generator(self, monomial: LaurentMonomial) -> "MonomialIdeal":
        return MonomialIdeal(self.generators + (monomial,))

    def as_rep(self) -> RepElement:
        """The generators as a multiplicity-1 representation element."""
        return RepElement.from_monomials(self.generators)

    def remap(self, mapping: Mapping[int, int], nvars: int) -> "MonomialIdeal":
        return MonomialIdeal(g.remap(mapping, nvars) for g in self.generators)

    def sort_key(self) -> tuple[tuple[int, ...], ...]:
        """Canonical comparison key fixing a deterministic point order.

        Exponents are negated so that an ascending sort lists ideals in
        the same descending-lexicographic convention as monomial terms
        ((x0^2, x1^2) before (x2^2, x3^2)).
        """
        return tuple(tuple(-e for e in g.exps) for g in self.generators)

    # -- identity and rendering ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MonomialIdeal) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self) -> str:
        return f"MonomialIdeal{self}"


# ---------------------------------------------------------------------------
#  Module-level operation aliases for the ring arithmetic.
# ---------------------------------------------------------------------------


def rep_add(a: RepElement, b: RepElement) -> RepElement:
    """Pointwise sum of multiplicities; zero terms are dropped."""
    return a + b


def rep_sub(a: RepElement, b: RepElement) -> RepElement:
    """Pointwise difference of multiplicities."""
    return a - b


def rep_mul(a: RepElement, b: RepElement) -> RepElement:
    """Ring product: exponent vectors add, multiplicities multiply."""
    return a * b


def rep_dual(a: RepElement) -> RepElement:
    """Dual representation: every exponent vector negated."""
    return a.dual()


# ---------------------------------------------------------------------------
#  Invariant section spaces and ideal twists.
# ---------------------------------------------------------------------------


def _degree_monomials(nvars: int, degree: int) -> Iterator[tuple[int, ...]]:
    """All exponent vectors of the given length summing to `degree`."""
    if nvars == 1:
        yield (degree,)
        return
    for head in range(degree, -1, -1):
        for tail in _degree_monomials(nvars - 1, degree - head):
            yield (head,) + tail


@lru_cache(maxsize=None)
def invariant_sections(n: int, m: int) -> RepElement:
    """The Gamma-invariant subspace V[m] of the degree-m sections.

    Returns the multiplicity-1 sum of all degree-m monomials in x0..xn
    whose x0-exponent is even, i.e. the sections of O(m) on the quotient
    P(2,1,...,1).  Computed by direct combinatorial enumeration.

    >>> invariant_sections(3, 2).dimension
    7
    >>> [str(m) for m in invariant_sections(3, 1)]
    ['x1', 'x2', 'x3']
    """
    if n < 1:
        raise ValueError(f"need at least two characters, got n={n}")
    if m < 0:
        raise ValueError(f"negative degree: {m}")
    return RepElement.from_monomials(
        LaurentMonomial(exps)
        for exps in _degree_monomials(n + 1, m)
        if exps[INVARIANT_INDEX] % INVARIANT_ORDER == 0
    )


def ideal_twist(I: MonomialIdeal, k: int) -> RepElement:
    """The degree-k slice of the ideal inside the invariant ring.

    Returns the multiplicity-1 sum of the distinct invariant degree-k
    monomials lying in I; a monomial divisible by several generators is
    counted once.

    >>> I = MonomialIdeal.of(4, "x0^2")
    >>> [str(m) for m in ideal_twist(I, 2)]
    ['x0^2']
    """
    if k < 0:
        raise ValueError(f"negative degree: {k}")
    sections = invariant_sections(I.nvars - 1, k)
    return RepElement.from_monomials(
        m for m in sections.support() if I.contains(m)
    )
