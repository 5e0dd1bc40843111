"""Finite modules over Z/n in canonical invariant-factor form.

A module is a direct sum of cyclic groups Z/d_1 + ... + Z/d_k with
1 < d_1 | d_2 | ... | d_k and every d_i dividing the ring modulus n; the
empty list is the zero module.  Two modules are isomorphic exactly when
their factor tuples are equal, so isomorphism testing is `==`.

Elements are tuples with entry i taken mod d_i.  A morphism is a residue
matrix with one row per codomain factor e_j and one column per domain
factor d_i, entry a[j][i] mod e_j, subject to the well-definedness
condition d_i * a[j][i] == 0 (mod e_j).

All structural computations (canonical form, kernels, cokernels, sums,
solving) go through the integer relation lattice: a presentation with g
generators is the quotient of Z^g by the lattice spanned by its relation
rows together with n times the identity, and Smith normal form over Z
diagonalizes it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod

from .snf import (
    SmithForm,
    lattice_key,
    mat_vec,
    smith_normal_form,
    snf_diagonal,
)


@dataclass(frozen=True)
class RingSpec:
    """The base ring Z/n (n >= 2), also the dualizing object."""

    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")

    def divisors(self) -> tuple[int, ...]:
        n = self.modulus
        return tuple(d for d in range(1, n + 1) if n % d == 0)

    def unit_module(self) -> "FiniteModule":
        """Z/n as a module over itself (free of rank one)."""
        return FiniteModule(self, (self.modulus,))

    def zero_module(self) -> "FiniteModule":
        return FiniteModule(self, ())

    def to_dict(self) -> dict:
        return {"n": self.modulus}

    @classmethod
    def from_dict(cls, data: dict) -> "RingSpec":
        return cls(int(data["n"]))


@dataclass(frozen=True)
class FiniteModule:
    ring: RingSpec
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        n = self.ring.modulus
        prev = 1
        for d in self.invariant_factors:
            if d <= 1:
                raise ValueError(f"invariant factor {d} must exceed 1")
            if n % d:
                raise ValueError(f"invariant factor {d} does not divide {n}")
            if d % prev:
                raise ValueError(
                    f"invariant factors {self.invariant_factors} do not form a divisor chain"
                )
            prev = d

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_zero(self) -> bool:
        return not self.invariant_factors

    def rank(self) -> int:
        return len(self.invariant_factors)

    def zero_element(self) -> tuple[int, ...]:
        return (0,) * len(self.invariant_factors)

    def reduce(self, vec) -> tuple[int, ...]:
        """Reduce an integer vector to the canonical element it represents."""
        return tuple(v % d for v, d in zip(vec, self.invariant_factors))

    def elements(self):
        """All elements in lexicographic order."""
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def element_order(self, x) -> int:
        result = 1
        for v, d in zip(x, self.invariant_factors):
            if v % d:
                result = result * (d // gcd(v, d)) // gcd(result, d // gcd(v, d))
        return result

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def scale(self, c: int, x) -> tuple[int, ...]:
        return tuple((c * a) % d for a, d in zip(x, self.invariant_factors))

    def to_dict(self) -> dict:
        return {"n": self.ring.modulus, "factors": list(self.invariant_factors)}

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteModule":
        return cls(RingSpec(int(data["n"])), tuple(int(d) for d in data["factors"]))


def cyclic(ring: RingSpec, d: int) -> FiniteModule:
    """Z/d as a Z/n-module (d | n); d == 1 gives the zero module."""
    if d == 1:
        return FiniteModule(ring, ())
    return FiniteModule(ring, (d,))


@dataclass(frozen=True)
class Presentation:
    """Generators and relations: the quotient of Z^g by the relation rows.

    Relation entries are residues mod n; the lattice always implicitly
    contains n * identity, so the presented module is a Z/n-module.
    """

    ring: RingSpec
    generators: int
    relations: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for row in self.relations:
            if len(row) != self.generators:
                raise ValueError("relation row length does not match generator count")


@dataclass(frozen=True)
class Morphism:
    domain: FiniteModule
    codomain: FiniteModule
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.domain.ring != self.codomain.ring:
            raise ValueError("domain and codomain live over different rings")
        dom = self.domain.invariant_factors
        cod = self.codomain.invariant_factors
        if len(self.matrix) != len(cod):
            raise ValueError("matrix must have one row per codomain factor")
        reduced = []
        for j, row in enumerate(self.matrix):
            if len(row) != len(dom):
                raise ValueError("matrix row length must match domain rank")
            if any(type(a) is not int for a in row):
                raise TypeError("matrix entries must be ints")
            e = cod[j]
            red = tuple(a % e for a in row)
            for i, a in enumerate(red):
                if (dom[i] * a) % e:
                    raise ValueError(
                        f"entry {a} at ({j},{i}) is not a well-defined "
                        f"map Z/{dom[i]} -> Z/{e}"
                    )
            reduced.append(red)
        object.__setattr__(self, "matrix", tuple(reduced))

    # -- construction helpers -------------------------------------------------

    @classmethod
    def identity(cls, m: FiniteModule) -> "Morphism":
        k = m.rank()
        return cls(m, m, tuple(tuple(1 if i == j else 0 for i in range(k)) for j in range(k)))

    @classmethod
    def zero(cls, dom: FiniteModule, cod: FiniteModule) -> "Morphism":
        return cls(dom, cod, tuple((0,) * dom.rank() for _ in range(cod.rank())))

    @classmethod
    def from_columns(cls, dom: FiniteModule, cod: FiniteModule, columns) -> "Morphism":
        """Build from the list of images of the domain generators."""
        cols = list(columns)
        if len(cols) != dom.rank():
            raise ValueError("need one column per domain generator")
        l = cod.rank()
        return cls(dom, cod, tuple(tuple(col[j] for col in cols) for j in range(l)))

    @classmethod
    def multiplication(cls, m: FiniteModule, c: int) -> "Morphism":
        k = m.rank()
        return cls(m, m, tuple(tuple(c if i == j else 0 for i in range(k)) for j in range(k)))

    # -- arithmetic -----------------------------------------------------------

    def apply(self, x) -> tuple[int, ...]:
        cod = self.codomain.invariant_factors
        return tuple(
            sum(row[i] * x[i] for i in range(len(x))) % cod[j]
            for j, row in enumerate(self.matrix)
        )

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition self after other."""
        if other.codomain != self.domain:
            raise ValueError("composition mismatch")
        a, b = self.matrix, other.matrix
        k = other.domain.rank()
        mid = self.domain.rank()
        rows = tuple(
            tuple(sum(a[j][t] * b[t][i] for t in range(mid)) for i in range(k))
            for j in range(len(a))
        )
        return Morphism(other.domain, self.codomain, rows)

    def __add__(self, other: "Morphism") -> "Morphism":
        if self.domain != other.domain or self.codomain != other.codomain:
            raise ValueError("can only add parallel morphisms")
        rows = tuple(
            tuple(x + y for x, y in zip(r1, r2))
            for r1, r2 in zip(self.matrix, other.matrix)
        )
        return Morphism(self.domain, self.codomain, rows)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def __neg__(self) -> "Morphism":
        return Morphism(
            self.domain,
            self.codomain,
            tuple(tuple(-x for x in row) for row in self.matrix),
        )

    def scaled(self, c: int) -> "Morphism":
        return Morphism(
            self.domain,
            self.codomain,
            tuple(tuple(c * x for x in row) for row in self.matrix),
        )

    # -- predicates -----------------------------------------------------------

    @property
    def is_zero_morphism(self) -> bool:
        return all(not any(row) for row in self.matrix)

    def is_mono(self) -> bool:
        return kernel_order(self) == 1

    def is_epi(self) -> bool:
        return cokernel_order(self) == 1

    def is_iso(self) -> bool:
        return (
            self.domain.invariant_factors == self.codomain.invariant_factors
            and self.is_mono()
        )

    def lift(self) -> list[list[int]]:
        """The matrix as plain integers (a chosen lift to Z)."""
        return [list(row) for row in self.matrix]

    def to_dict(self) -> dict:
        return {
            "dom": self.domain.to_dict(),
            "cod": self.codomain.to_dict(),
            "matrix": [list(row) for row in self.matrix],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Morphism":
        return cls(
            FiniteModule.from_dict(data["dom"]),
            FiniteModule.from_dict(data["cod"]),
            tuple(tuple(int(x) for x in row) for row in data["matrix"]),
        )


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Canonicalized:
    """Result of putting a presentation in invariant-factor form.

    ``generator_images[i]`` is the canonical element presented by the i-th
    generator; ``generator_lifts[t]`` is an integer combination of the
    presentation generators mapping onto the t-th canonical generator.
    """

    module: FiniteModule
    generator_images: tuple[tuple[int, ...], ...]
    generator_lifts: tuple[tuple[int, ...], ...]


def canonicalize(pres: Presentation) -> Canonicalized:
    n = pres.ring.modulus
    g = pres.generators
    rows = [list(r) for r in pres.relations]
    rows.extend([n if i == j else 0 for j in range(g)] for i in range(g))
    form = smith_normal_form(rows)
    diag = form.diagonal
    kept = [i for i in range(g) if diag[i] > 1]
    for i in range(g):
        if diag[i] == 0 or n % diag[i]:
            raise AssertionError("relation lattice must have full rank with factors dividing n")
    factors = tuple(diag[i] for i in kept)
    module = FiniteModule(pres.ring, factors)
    v = form.right
    vinv = form.right_inv
    images = tuple(
        tuple(v[i][j] % diag[j] for j in kept) for i in range(g)
    )
    lifts = tuple(tuple(vinv[t][:g]) for t in kept)
    return Canonicalized(module, images, lifts)


# ---------------------------------------------------------------------------
# subgroups presented by integer lattices
# ---------------------------------------------------------------------------


def subgroup_from_lattice(ambient: FiniteModule, gens: list[list[int]]):
    """The subgroup of ``ambient`` generated by the given integer vectors.

    Returns (module, inclusion).  The vectors are taken mod the ambient
    factors; the ambient relation lattice is joined in automatically.
    """
    d = ambient.invariant_factors
    k = len(d)
    rows = [list(v) for v in gens]
    rows.extend([d[i] if i == j else 0 for j in range(k)] for i in range(k))
    form = smith_normal_form(rows)
    diag = form.diagonal
    if any(diag[i] == 0 for i in range(k)):
        raise AssertionError("subgroup lattice must have full rank")
    vinv = form.right_inv
    basis = [[diag[i] * vinv[i][j] for j in range(k)] for i in range(k)]
    v = form.right
    rel = []
    for j in range(k):
        row = []
        for i in range(k):
            num = d[j] * v[j][i]
            if num % diag[i]:
                raise AssertionError("ambient relation fell outside the subgroup lattice")
            row.append((num // diag[i]) % ambient.ring.modulus)
        rel.append(tuple(row))
    can = canonicalize(Presentation(ambient.ring, k, tuple(rel)))
    columns = []
    for t in range(can.module.rank()):
        lift = can.generator_lifts[t]
        ambient_vec = [
            sum(lift[u] * basis[u][j] for u in range(k)) for j in range(k)
        ]
        columns.append(ambient.reduce(ambient_vec))
    incl = Morphism.from_columns(can.module, ambient, columns)
    return can.module, incl


def subgroup_key(ambient: FiniteModule, gens: list[list[int]]) -> tuple:
    """Canonical key identifying the subgroup generated by ``gens``."""
    d = ambient.invariant_factors
    k = len(d)
    rows = [list(v) for v in gens]
    rows.extend([d[i] if i == j else 0 for j in range(k)] for i in range(k))
    return lattice_key(rows, k)


# ---------------------------------------------------------------------------
# kernels, images, cokernels
# ---------------------------------------------------------------------------


def _kernel_lattice_gens(f: Morphism) -> list[list[int]]:
    """Integer vectors spanning the preimage of the codomain lattice."""
    k = f.domain.rank()
    l = f.codomain.rank()
    if l == 0:
        return [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    a = f.lift()
    e = f.codomain.invariant_factors
    p = [a[j] + [e[j] if j == t else 0 for t in range(l)] for j in range(l)]
    form = smith_normal_form(p)
    r = form.rank
    v = form.right
    gens = []
    for col in range(r, k + l):
        gens.append([v[row][col] for row in range(k)])
    return gens


def kernel(f: Morphism):
    """(kernel module, inclusion into the domain)."""
    return subgroup_from_lattice(f.domain, _kernel_lattice_gens(f))


def image(f: Morphism):
    """(image module, inclusion into the codomain)."""
    cols = [[f.matrix[j][i] for j in range(f.codomain.rank())] for i in range(f.domain.rank())]
    return subgroup_from_lattice(f.codomain, cols)


def cokernel(f: Morphism):
    """(cokernel module, projection from the codomain)."""
    cod = f.codomain
    l = cod.rank()
    rel = [
        tuple(f.matrix[j][i] for j in range(l))
        for i in range(f.domain.rank())
    ]
    rel.extend(
        tuple(cod.invariant_factors[j] if j == t else 0 for t in range(l))
        for j in range(l)
    )
    can = canonicalize(Presentation(cod.ring, l, tuple(rel)))
    proj = Morphism.from_columns(cod, can.module, list(can.generator_images))
    return can.module, proj


@lru_cache(maxsize=65536)
def _cokernel_order(cod_factors: tuple[int, ...], matrix: tuple[tuple[int, ...], ...]) -> int:
    l = len(cod_factors)
    if l == 0:
        return 1
    rows = [list(matrix[j]) + [cod_factors[j] if j == t else 0 for t in range(l)] for j in range(l)]
    diag = snf_diagonal(rows)
    return prod(diag[:l])


def cokernel_order(f: Morphism) -> int:
    return _cokernel_order(f.codomain.invariant_factors, f.matrix)


def image_order(f: Morphism) -> int:
    return f.codomain.order // cokernel_order(f)


def kernel_order(f: Morphism) -> int:
    im = image_order(f)
    return f.domain.order // im


# ---------------------------------------------------------------------------
# linear solving
# ---------------------------------------------------------------------------


def solve(f: Morphism, target) -> tuple[int, ...] | None:
    """One solution x of f(x) == target, or None.

    Deterministic: the solution comes from the Smith form of the augmented
    system, so identical inputs give identical witnesses.
    """
    k = f.domain.rank()
    l = f.codomain.rank()
    if l == 0:
        return f.domain.zero_element()
    a = f.lift()
    e = f.codomain.invariant_factors
    p = [a[j] + [e[j] if j == t else 0 for t in range(l)] for j in range(l)]
    form = smith_normal_form(p)
    c = mat_vec(form.left, list(target))
    w = [0] * (k + l)
    for j in range(l):
        dj = form.diagonal[j] if j < len(form.diagonal) else 0
        if dj:
            if c[j] % dj:
                return None
            w[j] = c[j] // dj
        elif c[j]:
            return None
    z = mat_vec(form.right, w)
    x = f.domain.reduce(z[:k])
    if f.apply(x) != tuple(t % e[j] for j, t in enumerate(target)):
        raise AssertionError("solver produced a non-solution")
    return x


def solution_set(f: Morphism, target):
    """All solutions of f(x) == target as an iterator (coset of the kernel)."""
    x0 = solve(f, target)
    if x0 is None:
        return
    ker, incl = kernel(f)
    dom = f.domain
    for coeffs in ker.elements():
        yield dom.add(x0, incl.apply(coeffs))


def factor_through_mono(h: Morphism, m: Morphism) -> Morphism:
    """The unique phi with m @ phi == h, when the image of h lies in m.

    Raises ValueError when no factorization exists.
    """
    if h.codomain != m.codomain:
        raise ValueError("codomain mismatch")
    columns = []
    for i in range(h.domain.rank()):
        target = h.apply(tuple(1 if t == i else 0 for t in range(h.domain.rank())))
        x = solve(m, target)
        if x is None:
            raise ValueError("morphism does not factor through the given mono")
        columns.append(x)
    phi = Morphism.from_columns(h.domain, m.domain, columns)
    if (m @ phi).matrix != h.matrix:
        raise ValueError("factorization through mono failed")
    return phi


def factor_through_epi(h: Morphism, e: Morphism) -> Morphism:
    """The unique phi with phi @ e == h, when h kills the kernel of e.

    Raises ValueError when no factorization exists.
    """
    if h.domain != e.domain:
        raise ValueError("domain mismatch")
    columns = []
    for t in range(e.codomain.rank()):
        gen = tuple(1 if s == t else 0 for s in range(e.codomain.rank()))
        y = solve(e, gen)
        if y is None:
            raise ValueError("the would-be epi is not surjective onto its codomain")
        columns.append(h.apply(y))
    try:
        phi = Morphism.from_columns(e.codomain, h.codomain, columns)
    except ValueError as exc:
        raise ValueError(f"morphism does not descend along the epi: {exc}") from None
    if (phi @ e).matrix != h.matrix:
        raise ValueError("factorization through epi failed")
    return phi


# ---------------------------------------------------------------------------
# direct sums
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirectSum:
    module: FiniteModule
    injections: tuple[Morphism, ...]
    projections: tuple[Morphism, ...]


@lru_cache(maxsize=4096)
def direct_sum_many(summands: tuple[FiniteModule, ...]) -> DirectSum:
    """Biproduct of finitely many modules, with structural morphisms."""
    if not summands:
        raise ValueError("direct_sum_many needs at least one summand")
    ring = summands[0].ring
    if any(m.ring != ring for m in summands):
        raise ValueError("summands live over different rings")
    offsets = []
    total = 0
    for m in summands:
        offsets.append(total)
        total += m.rank()
    rel = []
    for idx, m in enumerate(summands):
        for i, d in enumerate(m.invariant_factors):
            rel.append(tuple(d if j == offsets[idx] + i else 0 for j in range(total)))
    can = canonicalize(Presentation(ring, total, tuple(rel)))
    s = can.module
    injections = []
    projections = []
    for idx, m in enumerate(summands):
        off = offsets[idx]
        k = m.rank()
        inj_cols = [can.generator_images[off + i] for i in range(k)]
        injections.append(Morphism.from_columns(m, s, inj_cols))
        proj_cols = [
            m.reduce(can.generator_lifts[t][off : off + k]) for t in range(s.rank())
        ]
        projections.append(Morphism.from_columns(s, m, proj_cols))
    return DirectSum(s, tuple(injections), tuple(projections))


def direct_sum(m1: FiniteModule, m2: FiniteModule) -> DirectSum:
    return direct_sum_many((m1, m2))
