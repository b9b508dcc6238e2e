"""Exact graded-commutative algebra over the rationals.

Everything here is computed with `fractions.Fraction`; there is no floating
point anywhere in the package.  Two kinds of algebra model are supported:

* :class:`FreeModel` -- a free graded-commutative algebra on polynomial
  (even-degree) generators and exterior (odd-degree) generators, with a
  differential given on generators and extended as a degree +1 derivation.
  Monomial keys are ``(evens, odds)`` with ``evens`` a dense exponent tuple
  and ``odds`` a strictly increasing tuple of odd-generator indices.  The
  odd part is kept in declaration order; reordering signs are absorbed into
  coefficients at construction time, so equal elements have equal dicts.

* :class:`FiniteModel` -- a finite-dimensional algebra presented by a graded
  basis, structure constants and a differential matrix.  Keys are basis
  indices.

:class:`Element` is a sparse linear combination of keys and works uniformly
over both models.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def koszul_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign picked up when graded symbols are rearranged by ``perm``.

    ``perm[i]`` is the index (into the original tuple) of the symbol that
    lands in position ``i`` of the rearranged tuple; ``degrees`` are the
    degrees of the original tuple.  Each inverted pair contributes
    ``(-1)**(d_i * d_j)``.

    The cocycle rule holds: with ``(p∘q)[i] = p[q[i]]``,
    ``koszul_sign(p∘q, d) == koszul_sign(p, d) * koszul_sign(q, d∘p)``.
    On permutations that preserve the degree vector this restricts to a
    group homomorphism into {+1, -1}.
    """
    n = len(perm)
    if len(degrees) != n or sorted(perm) != list(range(n)):
        raise ValueError("perm must be a bijection on range(len(degrees))")
    sign = 1
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j] and (degrees[perm[i]] * degrees[perm[j]]) % 2:
                sign = -sign
    return sign


def unshuffles(p: int, q: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All splittings of ``range(p+q)`` into two increasing blocks of sizes p, q.

    Enumeration order is the lexicographic order of the first block, so the
    output is deterministic.  ``len(unshuffles(p, q)) == C(p+q, p)``.
    """
    if p < 0 or q < 0:
        raise ValueError("block sizes must be non-negative")
    out = []
    universe = range(p + q)
    for left in itertools.combinations(universe, p):
        leftset = set(left)
        right = tuple(i for i in universe if i not in leftset)
        out.append((left, right))
    return out


def merge_odds(a: tuple[int, ...], b: tuple[int, ...]):
    """Merge two increasing index tuples; return ``(sign, merged)`` or None.

    The sign counts transpositions of odd symbols; a repeated index squares
    to zero and yields None.
    """
    if not a:
        return 1, b
    if not b:
        return 1, a
    merged = []
    sign = 1
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        x, y = a[i], b[j]
        if x == y:
            return None
        if x < y:
            merged.append(x)
            i += 1
        else:
            merged.append(y)
            j += 1
            if (la - i) % 2:
                sign = -sign
    merged.extend(a[i:])
    merged.extend(b[j:])
    return sign, tuple(merged)


class FreeModel:
    """Free graded-commutative algebra with a generator-defined differential.

    ``even`` and ``odd`` are sequences of ``(name, degree)`` pairs; even
    degrees must be even and odd degrees odd.  ``diff`` maps generator names
    to Elements (or plain term dicts) and is extended by the graded Leibniz
    rule; omitted generators are sent to zero.  ``truncate`` is an optional
    monomial predicate; keys failing it are dropped from every result (used
    for nilpotent base extensions such as adjoining t with t**m = 0).
    """

    is_free = True

    def __init__(self, even, odd, diff=None, truncate=None, name="free"):
        self.even_names = tuple(n for n, _ in even)
        self.even_degrees = tuple(d for _, d in even)
        self.odd_names = tuple(n for n, _ in odd)
        self.odd_degrees = tuple(d for _, d in odd)
        if any(d % 2 for d in self.even_degrees):
            raise ValueError("polynomial generators must have even degree")
        if any(d % 2 == 0 for d in self.odd_degrees):
            raise ValueError("exterior generators must have odd degree")
        if len(set(self.even_names) | set(self.odd_names)) != len(self.even_names) + len(self.odd_names):
            raise ValueError("generator names must be distinct")
        self.truncate = truncate
        self.name = name
        self._zero_exps = (0,) * len(self.even_names)
        self.unit_key = (self._zero_exps, ())

        self._diff_images = {}
        diff = diff or {}
        for gen, img in diff.items():
            el = img if isinstance(img, Element) else Element(self, img)
            self._diff_images[gen] = el
        self._check_differential()

    # -- keys ---------------------------------------------------------------

    def key_degree(self, key) -> int:
        evens, odds = key
        d = sum(e * dg for e, dg in zip(evens, self.even_degrees))
        d += sum(self.odd_degrees[j] for j in odds)
        return d

    def mul_keys(self, k1, k2):
        """Product of two monomial keys: ``(sign, key)`` or None if zero."""
        e1, o1 = k1
        e2, o2 = k2
        merged = merge_odds(o1, o2)
        if merged is None:
            return None
        sign, odds = merged
        evens = tuple(a + b for a, b in zip(e1, e2))
        key = (evens, odds)
        if self.truncate is not None and not self.truncate(key):
            return None
        return sign, key

    def key_name(self, key) -> str:
        evens, odds = key
        parts = []
        for name, e in zip(self.even_names, evens):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        parts.extend(self.odd_names[j] for j in odds)
        return " ".join(parts) if parts else "1"

    def sort_key(self, key):
        evens, odds = key
        return (self.key_degree(key), len(odds), odds, evens)

    # -- generators ---------------------------------------------------------

    def gen(self, name: str) -> "Element":
        if name in self.even_names:
            i = self.even_names.index(name)
            evens = tuple(1 if j == i else 0 for j in range(len(self.even_names)))
            return Element(self, {(evens, ()): ONE})
        if name in self.odd_names:
            j = self.odd_names.index(name)
            return Element(self, {(self._zero_exps, (j,)): ONE})
        raise KeyError(name)

    def generator_elements(self) -> list["Element"]:
        return [self.gen(n) for n in self.even_names + self.odd_names]

    def one(self) -> "Element":
        return Element(self, {self.unit_key: ONE})

    def zero(self) -> "Element":
        return Element(self, {})

    # -- differential -------------------------------------------------------

    def diff_key(self, key) -> "Element":
        """Leibniz extension of the generator differential to a monomial."""
        evens, odds = key
        out = self.zero()
        odd_tail = Element(self, {(self._zero_exps, odds): ONE})
        for i, e in enumerate(evens):
            if e == 0:
                continue
            img = self._diff_images.get(self.even_names[i])
            if img is None or not img.terms:
                continue
            reduced = tuple(ev - 1 if j == i else ev for j, ev in enumerate(evens))
            # x**e -> e * x**(e-1) d(x); the image sits left of the odd tail
            out = out + Element(self, {(reduced, ()): Fraction(e)}) * img * odd_tail
        prefix_parity = 0  # even exponents contribute even degree
        for pos, j in enumerate(odds):
            img = self._diff_images.get(self.odd_names[j])
            if img is not None and img.terms:
                before = (evens, odds[:pos])
                after = (self._zero_exps, odds[pos + 1:])
                sgn = -1 if (prefix_parity + pos) % 2 else 1
                term = Element(self, {before: Fraction(sgn)}) * img * Element(self, {after: ONE})
                out = out + term
        return out

    def _check_differential(self):
        for gen in itertools.chain(self.even_names, self.odd_names):
            img = self._diff_images.get(gen)
            if img is None or not img.terms:
                continue
            gdeg = self.key_degree(self.gen(gen).single_key())
            ideg = img.degree()
            if ideg is not None and ideg != gdeg + 1:
                raise ValueError(f"differential of {gen} must have degree {gdeg + 1}")
        for gen in itertools.chain(self.even_names, self.odd_names):
            if not self.gen(gen).d().d().is_zero():
                raise ValueError(f"differential does not square to zero on {gen}")


class FiniteModel:
    """Graded algebra given by basis degrees, structure constants and d-matrix.

    ``products[(i, j)]`` is a dict ``{k: coefficient}`` for the product of
    basis elements i and j (missing pairs multiply to zero), ``diff[i]`` a
    dict for d of basis element i.  Construction verifies unit behaviour,
    graded commutativity, associativity on basis triples, the Leibniz rule,
    degree +1 and d**2 = 0.
    """

    is_free = False

    def __init__(self, degrees, unit_index, products, diff=None, name="finite"):
        self.degrees = tuple(degrees)
        self.unit_index = unit_index
        self.products = {pair: {k: Fraction(c) for k, c in term.items() if c}
                         for pair, term in products.items()}
        self.diff_matrix = {i: {k: Fraction(c) for k, c in (col or {}).items() if c}
                            for i, col in (diff or {}).items()}
        self.name = name
        self.unit_key = unit_index
        if self.degrees[unit_index] != 0:
            raise ValueError("unit must sit in degree 0")
        self._validate()

    def key_degree(self, key) -> int:
        return self.degrees[key]

    def key_name(self, key) -> str:
        return f"b{key}"

    def sort_key(self, key):
        return key

    def basis_element(self, i) -> "Element":
        return Element(self, {i: ONE})

    def one(self) -> "Element":
        return self.basis_element(self.unit_index)

    def zero(self) -> "Element":
        return Element(self, {})

    def generator_elements(self) -> list["Element"]:
        return [self.basis_element(i) for i in range(len(self.degrees))]

    def mul_basis(self, i, j) -> "Element":
        return Element(self, dict(self.products.get((i, j), {})))

    def diff_key(self, key) -> "Element":
        return Element(self, dict(self.diff_matrix.get(key, {})))

    def _validate(self):
        n = len(self.degrees)
        basis = [self.basis_element(i) for i in range(n)]
        for i in range(n):
            if not (self.one() * basis[i] == basis[i] and basis[i] * self.one() == basis[i]):
                raise ValueError(f"unit fails on basis element {i}")
        for i in range(n):
            for j in range(n):
                prod = self.mul_basis(i, j)
                deg = prod.degree()
                if deg is not None and deg != self.degrees[i] + self.degrees[j]:
                    raise ValueError(f"product of {i},{j} is not graded")
                sign = -1 if (self.degrees[i] * self.degrees[j]) % 2 else 1
                if not prod == self.mul_basis(j, i) * Fraction(sign):
                    raise ValueError(f"product not graded-commutative at ({i},{j})")
                img = prod.d()
                leib = basis[i].d() * basis[j] + basis[i] * basis[j].d() * Fraction(
                    -1 if self.degrees[i] % 2 else 1)
                if not img == leib:
                    raise ValueError(f"differential fails Leibniz at ({i},{j})")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if not (basis[i] * basis[j]) * basis[k] == basis[i] * (basis[j] * basis[k]):
                        raise ValueError(f"associativity fails at ({i},{j},{k})")
        for i, col in self.diff_matrix.items():
            for k, c in col.items():
                if c and self.degrees[k] != self.degrees[i] + 1:
                    raise ValueError("differential is not of degree +1")
        for i in range(n):
            if not basis[i].d().d().is_zero():
                raise ValueError(f"differential does not square to zero on {i}")


class Element:
    """Sparse linear combination of monomial keys of one model.

    Immutable by convention: all operations return fresh Elements.  The zero
    element is the empty dict and its degree is reported as None.
    """

    __slots__ = ("model", "terms")

    def __init__(self, model, terms=None):
        self.model = model
        if terms:
            self.terms = {k: Fraction(c) for k, c in terms.items() if c}
        else:
            self.terms = {}

    # -- ring structure ------------------------------------------------------

    def __add__(self, other: "Element") -> "Element":
        self._same_model(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            new = out.get(k, ZERO) + c
            if new:
                out[k] = new
            else:
                out.pop(k, None)
        res = Element(self.model)
        res.terms = out
        return res

    def __sub__(self, other: "Element") -> "Element":
        return self + (other * Fraction(-1))

    def __neg__(self) -> "Element":
        return self * Fraction(-1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Element(self.model)
            res = Element(self.model)
            res.terms = {k: v * c for k, v in self.terms.items()}
            return res
        self._same_model(other)
        model = self.model
        out: dict = {}
        if model.is_free:
            mul = model.mul_keys
            for k1, c1 in self.terms.items():
                for k2, c2 in other.terms.items():
                    hit = mul(k1, k2)
                    if hit is None:
                        continue
                    sign, key = hit
                    c = c1 * c2
                    if sign < 0:
                        c = -c
                    new = out.get(key, ZERO) + c
                    if new:
                        out[key] = new
                    else:
                        out.pop(key, None)
        else:
            for k1, c1 in self.terms.items():
                for k2, c2 in other.terms.items():
                    for key, c in self.model.mul_basis(k1, k2).terms.items():
                        new = out.get(key, ZERO) + c1 * c2 * c
                        if new:
                            out[key] = new
                        else:
                            out.pop(key, None)
        res = Element(model)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.model is other.model and self.terms == other.terms

    def __ne__(self, other) -> bool:
        return not self.__eq__(other)

    __hash__ = None

    # -- graded structure -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Degree of a homogeneous element; None for 0; raises if mixed."""
        if not self.terms:
            return None
        degs = {self.model.key_degree(k) for k in self.terms}
        if len(degs) > 1:
            raise ValueError(f"element is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({self.model.key_degree(k) for k in self.terms}) <= 1

    def homogeneous_parts(self) -> dict[int, "Element"]:
        parts: dict[int, Element] = {}
        for k, c in self.terms.items():
            d = self.model.key_degree(k)
            parts.setdefault(d, Element(self.model)).terms[k] = c
        return parts

    def parity_involution(self) -> "Element":
        """a -> (-1)**deg(a) a, extended linearly."""
        res = Element(self.model)
        res.terms = {k: (-c if self.model.key_degree(k) % 2 else c)
                     for k, c in self.terms.items()}
        return res

    def d(self) -> "Element":
        out = Element(self.model)
        for k, c in self.terms.items():
            out = out + self.model.diff_key(k) * c
        return out

    # -- helpers ---------------------------------------------------------------

    def single_key(self):
        if len(self.terms) != 1:
            raise ValueError("not a monomial element")
        return next(iter(self.terms))

    def coefficient(self, key) -> Fraction:
        return self.terms.get(key, ZERO)

    def map_terms(self, fn) -> "Element":
        """Sum of ``fn(key, coeff)`` over terms; fn returns an Element."""
        out = Element(self.model)
        for k, c in self.terms.items():
            out = out + fn(k, c)
        return out

    def _same_model(self, other: "Element"):
        if self.model is not other.model:
            raise ValueError("elements live in different algebra models")

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=self.model.sort_key)
        chunks = []
        for k in keys:
            c = self.terms[k]
            name = self.model.key_name(k)
            if name == "1":
                chunks.append(str(c))
            elif c == 1:
                chunks.append(name)
            elif c == -1:
                chunks.append(f"-{name}")
            else:
                chunks.append(f"{c}*{name}")
        return " + ".join(chunks).replace("+ -", "- ")


def de_rham_model(n: int, extra_even: Iterable[tuple[str, int]] = (), truncate=None,
                  name=None) -> FreeModel:
    """Polynomial forms on affine n-space: x_i in degree 0, dx_i in degree 1,
    d(x_i) = dx_i.  ``extra_even`` appends further polynomial generators
    (e.g. a nilpotent base parameter) with zero differential."""
    even = [(f"x{i}", 0) for i in range(1, n + 1)] + list(extra_even)
    odd = [(f"dx{i}", 1) for i in range(1, n + 1)]
    zero_exps = (0,) * len(even)
    images = {f"x{i}": {(zero_exps, (i - 1,)): ONE} for i in range(1, n + 1)}
    return FreeModel(even, odd, diff=images, truncate=truncate,
                     name=name or f"derham{n}")


def window_keys(model, max_poly_degree=None, max_form_degree=None, predicate=None):
    """Deterministic list of monomial keys in a verification window.

    For a FreeModel: all monomials with total polynomial exponent at most
    ``max_poly_degree`` and at most ``max_form_degree`` odd factors.  For a
    FiniteModel both caps are ignored and the whole basis is returned.
    """
    if not model.is_free:
        keys = list(range(len(model.degrees)))
    else:
        ne = len(model.even_names)
        cap = 0 if max_poly_degree is None else max_poly_degree
        fcap = len(model.odd_names) if max_form_degree is None else min(
            max_form_degree, len(model.odd_names))
        evens_list = []

        def build(i, left, acc):
            if i == ne:
                evens_list.append(tuple(acc))
                return
            for e in range(left + 1):
                build(i + 1, left - e, acc + [e])

        build(0, cap, [])
        keys = []
        for evens in evens_list:
            for r in range(fcap + 1):
                for odds in itertools.combinations(range(len(model.odd_names)), r):
                    keys.append((evens, odds))
    if predicate is not None:
        keys = [k for k in keys if predicate(k)]
    keys.sort(key=model.sort_key)
    return keys
