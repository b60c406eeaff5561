"""Finite-dimensional associative unital algebras with a distinguished basis.

An Algebra stores its structure constants sparsely: ``mult[i][j]`` is the
tuple of ``(k, coeff)`` pairs of the basis product b_i * b_j.  Construction
eagerly verifies associativity, the unit laws and (for the structure-
constant constructor) non-degeneracy of the product, since every
derivation downstream assumes them.  Multi-matrix algebras additionally
carry a block presentation: an ordered list of block sizes, the basis
being the matrix units of each block in row-major order.

All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from . import linalg
from .errors import (
    AssociativityViolation,
    BackendMismatch,
    DegenerateProduct,
    NoBlockPresentation,
    NotAntiMultiplicative,
    NotInvertible,
    NotMultiplicative,
    NotUnital,
    NoStarStructure,
    SepidemError,
)
from .scalars import EXACT, common_field


class Algebra:
    __slots__ = ("field", "dim", "labels", "mult", "unit", "star_matrix", "blocks", "_hash")

    def __init__(self, field, labels, mult, unit, star_matrix=None, blocks=None,
                 check_nondegenerate=False):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.mult = tuple(
            tuple(tuple((int(k), field.coerce(c)) for k, c in cell) for cell in row)
            for row in mult
        )
        self.unit = tuple(field.coerce(c) for c in unit)
        self.star_matrix = (
            tuple(tuple(field.coerce(c) for c in row) for row in star_matrix)
            if star_matrix is not None
            else None
        )
        self.blocks = tuple(int(n) for n in blocks) if blocks is not None else None
        self._hash = None
        self._validate(check_nondegenerate)

    # -- validation ---------------------------------------------------------

    def _validate(self, check_nondegenerate):
        d = self.dim
        if len(self.mult) != d or any(len(r) != d for r in self.mult):
            raise SepidemError("structure constant table has the wrong shape")
        if len(self.unit) != d:
            raise SepidemError("unit coefficient vector has the wrong length")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    lhs = self._mul_sparse(self.mult[i][j], k)
                    rhs = self._mul_sparse_left(i, self.mult[j][k])
                    if not _sparse_eq(lhs, rhs, self.field):
                        raise AssociativityViolation(i, j, k)
        for j in range(d):
            if not self._acts_as_unit(j):
                raise NotUnital(f"unit fails on basis element {self.labels[j]}")
        if check_nondegenerate:
            witness = product_degeneracy_witness(self.mult, d, self.field)
            if witness is not None:
                side, coeffs = witness
                raise DegenerateProduct(AlgebraElement(self, coeffs))
        # a two-sided unit already forces non-degeneracy: L_x(1) = x = R_x(1)
        if self.star_matrix is not None:
            self._validate_star()
        if self.blocks is not None:
            self._validate_blocks()

    def _mul_sparse(self, terms, k):
        # (sum_m c_m b_m) * b_k as a sparse accumulation
        acc = {}
        for m, c in terms:
            for t, c2 in self.mult[m][k]:
                acc[t] = acc.get(t, self.field.zero) + c * c2
        return acc

    def _mul_sparse_left(self, i, terms):
        acc = {}
        for m, c in terms:
            for t, c2 in self.mult[i][m]:
                acc[t] = acc.get(t, self.field.zero) + c * c2
        return acc

    def _acts_as_unit(self, j):
        left = {}
        right = {}
        for i, c in enumerate(self.unit):
            if not c:
                continue
            for k, c2 in self.mult[i][j]:
                left[k] = left.get(k, self.field.zero) + c * c2
            for k, c2 in self.mult[j][i]:
                right[k] = right.get(k, self.field.zero) + c * c2
        expect = {j: self.field.one}
        return _sparse_eq(left, expect, self.field) and _sparse_eq(right, expect, self.field)

    def _validate_star(self):
        f = self.field
        sm = self.star_matrix
        d = self.dim
        # star is antilinear, so star(star(b_i)) has matrix SM * conj(SM)
        for m in range(d):
            for i in range(d):
                acc = f.zero
                for k in range(d):
                    if sm[m][k] and sm[k][i]:
                        acc = acc + sm[m][k] * f.conj(sm[k][i])
                if not f.eq(acc, f.one if m == i else f.zero):
                    raise SepidemError("star map is not involutive")
        unit_elem = AlgebraElement(self, self.unit)
        if unit_elem.star() != unit_elem:
            raise SepidemError("star does not fix the unit")
        for i in range(d):
            for j in range(d):
                lhs = self.basis_element(i) * self.basis_element(j)
                if lhs.star() != self.basis_element(j).star() * self.basis_element(i).star():
                    raise SepidemError(
                        f"star is not anti-multiplicative on ({self.labels[i]}, {self.labels[j]})"
                    )

    def _validate_blocks(self):
        if sum(n * n for n in self.blocks) != self.dim:
            raise SepidemError("block sizes do not add up to the dimension")
        f = self.field
        for t1 in range(self.dim):
            a1, i1, j1 = self.block_coordinates(t1)
            for t2 in range(self.dim):
                a2, i2, j2 = self.block_coordinates(t2)
                if a1 == a2 and j1 == i2:
                    expect = {self.unit_index(a1, i1, j2): f.one}
                else:
                    expect = {}
                if not _sparse_eq(dict(self.mult[t1][t2]), expect, f):
                    raise SepidemError(
                        "structure constants do not match the declared block presentation"
                    )
        expected_unit = [f.zero] * self.dim
        for a, n in enumerate(self.blocks):
            for i in range(n):
                expected_unit[self.unit_index(a, i, i)] = f.one
        if not all(f.eq(x, y) for x, y in zip(self.unit, expected_unit)):
            raise SepidemError("unit does not match the declared block presentation")

    # -- block bookkeeping ----------------------------------------------------

    def block_offsets(self):
        if self.blocks is None:
            raise NoBlockPresentation("algebra has no block presentation")
        offs, o = [], 0
        for n in self.blocks:
            offs.append(o)
            o += n * n
        return offs

    def block_coordinates(self, t):
        """Index t -> (block, row, column) of the matrix unit."""
        offs = self.block_offsets()
        for a in range(len(self.blocks) - 1, -1, -1):
            if t >= offs[a]:
                r = t - offs[a]
                n = self.blocks[a]
                return a, r // n, r % n
        raise IndexError(t)

    def unit_index(self, a, i, j):
        """Basis index of the matrix unit at (row i, column j) of block a."""
        return self.block_offsets()[a] + i * self.blocks[a] + j

    # -- elements and maps ----------------------------------------------------

    def element(self, coeffs):
        return AlgebraElement(self, [self.field.coerce(c) for c in coeffs])

    def basis_element(self, i):
        coeffs = [self.field.zero] * self.dim
        coeffs[i] = self.field.one
        return AlgebraElement(self, coeffs)

    def zero(self):
        return AlgebraElement(self, [self.field.zero] * self.dim)

    def one(self):
        return AlgebraElement(self, self.unit)

    def functional(self, covector):
        return LinearFunctional(self, [self.field.coerce(c) for c in covector])

    def product_coeffs(self, x, y):
        zero = self.field.zero
        out = [zero] * self.dim
        mult = self.mult
        for i, xi in enumerate(x):
            if not xi:
                continue
            mi = mult[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                s = xi * yj
                for k, c in mi[j]:
                    out[k] = out[k] + s * c
        return out

    def left_mult_matrix(self, x):
        """Matrix L with L[k][i] = coefficient of b_k in x * b_i."""
        zero = self.field.zero
        rows = [[zero] * self.dim for _ in range(self.dim)]
        for j, xj in enumerate(x):
            if not xj:
                continue
            mj = self.mult[j]
            for i in range(self.dim):
                for k, c in mj[i]:
                    rows[k][i] = rows[k][i] + xj * c
        return rows

    def right_mult_matrix(self, x):
        """Matrix R with R[k][i] = coefficient of b_k in b_i * x."""
        zero = self.field.zero
        rows = [[zero] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            mi = self.mult[i]
            for j, xj in enumerate(x):
                if not xj:
                    continue
                for k, c in mi[j]:
                    rows[k][i] = rows[k][i] + xj * c
        return rows

    def star_coeffs(self, coeffs):
        if self.star_matrix is None:
            raise NoStarStructure(f"algebra {self!r} carries no star structure")
        f = self.field
        out = [f.zero] * self.dim
        for i, c in enumerate(coeffs):
            if not c:
                continue
            cc = f.conj(c)
            for k in range(self.dim):
                s = self.star_matrix[k][i]
                if s:
                    out[k] = out[k] + cc * s
        return out

    def to_field(self, field):
        """The same presentation over another scalar backend."""
        if field == self.field:
            return self
        mult = [
            [[(k, _carry(self.field, field, c)) for k, c in cell] for cell in row]
            for row in self.mult
        ]
        unit = [_carry(self.field, field, c) for c in self.unit]
        star = (
            [[_carry(self.field, field, c) for c in row] for row in self.star_matrix]
            if self.star_matrix is not None
            else None
        )
        return Algebra(field, self.labels, mult, unit, star, self.blocks)

    # -- value semantics --------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.field == other.field
            and self.labels == other.labels
            and self.mult == other.mult
            and self.unit == other.unit
            and self.star_matrix == other.star_matrix
            and self.blocks == other.blocks
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.labels, self.blocks, self.dim))
        return self._hash

    def __repr__(self):
        if self.blocks is not None:
            shape = "+".join(f"M{n}" for n in self.blocks)
        else:
            shape = f"dim {self.dim}"
        star = ", star" if self.star_matrix is not None else ""
        return f"Algebra({shape}{star}, {self.field.name})"


def _carry(src_field, dst_field, c):
    # exact -> float is plain numeric conversion; exact -> exact is identity
    return dst_field.coerce(src_field.to_complex(c)) if not dst_field.is_exact else dst_field.coerce(c)


def _sparse_eq(a, b, field):
    for k, v in a.items():
        w = b.get(k, field.zero)
        if not field.eq(v, w):
            return False
    for k, w in b.items():
        if k not in a and not field.eq(w, field.zero):
            return False
    return True


class AlgebraElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = tuple(coeffs)

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(
                self.algebra, self.algebra.product_coeffs(self.coeffs, other.coeffs)
            )
        s = self.algebra.field.coerce(other)
        return AlgebraElement(self.algebra, [s * a for a in self.coeffs])

    def __rmul__(self, other):
        s = self.algebra.field.coerce(other)
        return AlgebraElement(self.algebra, [s * a for a in self.coeffs])

    def _check(self, other):
        if self.algebra != other.algebra:
            raise BackendMismatch("elements belong to different algebras")

    def is_zero(self):
        f = self.algebra.field
        return all(f.is_zero(c) for c in self.coeffs)

    def star(self):
        return AlgebraElement(self.algebra, self.algebra.star_coeffs(self.coeffs))

    def inverse(self):
        """Two-sided inverse; the criterion is invertibility of the
        left-multiplication matrix."""
        a = self.algebra
        try:
            sol = linalg.solve_unique(
                a.left_mult_matrix(self.coeffs), [[c] for c in a.unit], a.field
            )
        except (linalg.RankDeficient, linalg.InconsistentSystem):
            raise NotInvertible(self) from None
        inv = AlgebraElement(a, [row[0] for row in sol])
        if inv * self != a.one():
            raise NotInvertible(self)
        return inv

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.algebra != other.algebra:
            return False
        f = self.algebra.field
        return all(f.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __repr__(self):
        f = self.algebra.field
        terms = [
            f"{c}*{lab}" for c, lab in zip(self.coeffs, self.algebra.labels) if not f.is_zero(c)
        ]
        return " + ".join(terms) if terms else "0"


def invert(x: AlgebraElement) -> AlgebraElement:
    return x.inverse()


class LinearFunctional:
    __slots__ = ("algebra", "covector")

    def __init__(self, algebra, covector):
        self.algebra = algebra
        self.covector = tuple(covector)

    def __call__(self, x: AlgebraElement):
        f = self.algebra.field
        acc = f.zero
        for c, v in zip(self.covector, x.coeffs):
            if c and v:
                acc = acc + c * v
        return acc

    def on_basis(self, i):
        return self.covector[i]

    def form_matrix(self):
        """The bilinear form (x, y) -> f(xy) on basis pairs."""
        a = self.algebra
        zero = a.field.zero
        rows = [[zero] * a.dim for _ in range(a.dim)]
        for i in range(a.dim):
            mi = a.mult[i]
            for j in range(a.dim):
                acc = zero
                for k, c in mi[j]:
                    if self.covector[k]:
                        acc = acc + c * self.covector[k]
                rows[i][j] = acc
        return rows

    def is_faithful(self):
        """Non-degeneracy of both induced pairings; they share one matrix."""
        return linalg.rank(self.form_matrix(), self.algebra.field) == self.algebra.dim

    def faithfulness_witness(self):
        """A nonzero element killed by the pairing, or None."""
        kern = linalg.nullspace(self.form_matrix(), self.algebra.field)
        if not kern:
            return None
        return AlgebraElement(self.algebra, kern[0])

    def traciality_witness(self):
        """Basis pair (i, j) with f(b_i b_j) != f(b_j b_i), or None."""
        m = self.form_matrix()
        f = self.algebra.field
        for i in range(self.algebra.dim):
            for j in range(i + 1, self.algebra.dim):
                if not f.eq(m[i][j], m[j][i]):
                    return (i, j)
        return None

    def is_tracial(self):
        return self.traciality_witness() is None

    def compose(self, linmap: "LinearMap") -> "LinearFunctional":
        """self after linmap, a functional on linmap.source."""
        if linmap.target != self.algebra:
            raise BackendMismatch("functional domain does not match map target")
        cov = linalg.vec_mat(list(self.covector), [list(r) for r in linmap.rows],
                             self.algebra.field)
        return LinearFunctional(linmap.source, cov)

    def __add__(self, other):
        return LinearFunctional(self.algebra,
                                [a + b for a, b in zip(self.covector, other.covector)])

    def __mul__(self, scalar):
        s = self.algebra.field.coerce(scalar)
        return LinearFunctional(self.algebra, [s * c for c in self.covector])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LinearFunctional):
            return NotImplemented
        if self.algebra != other.algebra:
            return False
        f = self.algebra.field
        return all(f.eq(a, b) for a, b in zip(self.covector, other.covector))

    __hash__ = None

    def __repr__(self):
        return f"LinearFunctional({list(map(str, self.covector))})"


class LinearMap:
    """Linear map between algebras, stored as a dim(target) x dim(source)
    matrix relative to the bases."""

    __slots__ = ("source", "target", "rows")

    def __init__(self, source, target, rows):
        self.source = source
        self.target = target
        self.rows = tuple(tuple(target.field.coerce(c) for c in row) for row in rows)
        if len(self.rows) != target.dim or any(len(r) != source.dim for r in self.rows):
            raise SepidemError("linear map matrix has the wrong shape")

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra != self.source:
            raise BackendMismatch("element is not in the source algebra")
        return AlgebraElement(
            self.target,
            linalg.mat_vec([list(r) for r in self.rows], list(x.coeffs), self.target.field),
        )

    def on_basis(self, i) -> AlgebraElement:
        return AlgebraElement(self.target, [row[i] for row in self.rows])

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        if other.target != self.source:
            raise BackendMismatch("maps do not compose")
        rows = linalg.mat_mul(
            [list(r) for r in self.rows], [list(r) for r in other.rows], self.target.field
        )
        return LinearMap(other.source, self.target, rows)

    def inverse(self) -> "LinearMap":
        try:
            inv = linalg.inverse([list(r) for r in self.rows], self.target.field)
        except (linalg.RankDeficient, linalg.InconsistentSystem):
            raise SepidemError("linear map is not bijective") from None
        return LinearMap(self.target, self.source, inv)

    def is_bijective(self):
        return (
            self.source.dim == self.target.dim
            and linalg.rank([list(r) for r in self.rows], self.target.field) == self.source.dim
        )

    def _comparison_scale(self):
        # products of two map entries set the roundoff scale in float mode
        m = linalg.matrix_scale([list(r) for r in self.rows], self.target.field)
        return max(1, m) * max(1, m)

    def multiplicative_witness(self):
        """Basis pair where T(xy) != T(x)T(y), or None."""
        f = self.target.field
        scale = self._comparison_scale()
        for i in range(self.source.dim):
            for j in range(self.source.dim):
                lhs = self._image_of_product(i, j)
                rhs = self.on_basis(i) * self.on_basis(j)
                for a, b in zip(lhs.coeffs, rhs.coeffs):
                    if not f.negligible(a - b, scale):
                        return (i, j)
        return None

    def anti_multiplicative_witness(self):
        """Basis pair where T(xy) != T(y)T(x), or None."""
        f = self.target.field
        scale = self._comparison_scale()
        for i in range(self.source.dim):
            for j in range(self.source.dim):
                lhs = self._image_of_product(i, j)
                rhs = self.on_basis(j) * self.on_basis(i)
                for a, b in zip(lhs.coeffs, rhs.coeffs):
                    if not f.negligible(a - b, scale):
                        return (i, j)
        return None

    def _image_of_product(self, i, j):
        f = self.target.field
        out = [f.zero] * self.target.dim
        for k, c in self.source.mult[i][j]:
            col = [row[k] for row in self.rows]
            for t, v in enumerate(col):
                if v:
                    out[t] = out[t] + c * v
        return AlgebraElement(self.target, out)

    def assert_multiplicative(self):
        w = self.multiplicative_witness()
        if w is not None:
            raise NotMultiplicative(f"map is not multiplicative at basis pair {w}", witness=w)

    def assert_anti_multiplicative(self):
        w = self.anti_multiplicative_witness()
        if w is not None:
            raise NotAntiMultiplicative(
                f"map is not anti-multiplicative at basis pair {w}", witness=w
            )

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        f = self.target.field
        return all(
            f.eq(a, b) for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    __hash__ = None

    def __repr__(self):
        return f"LinearMap({self.source!r} -> {self.target!r})"


def identity_map(a: Algebra) -> LinearMap:
    return LinearMap(a, a, linalg.identity(a.dim, a.field))


# -- constructors ---------------------------------------------------------------

_matrix_algebra_cache = {}


def matrix_algebra(n: int, with_star: bool = False, field=EXACT) -> Algebra:
    """The full matrix algebra of size n with matrix-unit basis e_ij.

    The unit is the sum of the diagonal units; the star, when requested,
    is the conjugate transpose e_ij -> e_ji.
    """
    if n < 1:
        raise SepidemError("matrix algebra needs n >= 1")
    key = (n, with_star, field)
    cached = _matrix_algebra_cache.get(key)
    if cached is not None:
        return cached
    sep = "" if n <= 9 else "_"
    labels = [f"e{i + 1}{sep}{j + 1}" for i in range(n) for j in range(n)]
    one = field.one
    idx = lambda i, j: i * n + j
    mult = [[() for _ in range(n * n)] for _ in range(n * n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        mult[idx(i, j)][idx(k, l)] = ((idx(i, l), one),)
    unit = [field.zero] * (n * n)
    for i in range(n):
        unit[idx(i, i)] = one
    star = None
    if with_star:
        star = [[field.zero] * (n * n) for _ in range(n * n)]
        for i in range(n):
            for j in range(n):
                star[idx(j, i)][idx(i, j)] = one
    a = Algebra(field, labels, mult, unit, star, blocks=[n])
    _matrix_algebra_cache[key] = a
    return a


def direct_sum(components) -> Algebra:
    """Block-diagonal sum: basis is the disjoint union, cross products vanish."""
    components = list(components)
    if not components:
        raise SepidemError("direct sum needs at least one component")
    field = common_field(*[c.field for c in components])
    offsets, labels, unit = [], [], []
    o = 0
    for a, comp in enumerate(components):
        offsets.append(o)
        labels.extend(f"{a + 1}:{lab}" for lab in comp.labels)
        unit.extend(comp.unit)
        o += comp.dim
    dim = o
    mult = [[() for _ in range(dim)] for _ in range(dim)]
    for a, comp in enumerate(components):
        off = offsets[a]
        for i in range(comp.dim):
            for j in range(comp.dim):
                mult[off + i][off + j] = tuple((off + k, c) for k, c in comp.mult[i][j])
    star = None
    if all(c.star_matrix is not None for c in components):
        star = [[field.zero] * dim for _ in range(dim)]
        for a, comp in enumerate(components):
            off = offsets[a]
            for k in range(comp.dim):
                for i in range(comp.dim):
                    star[off + k][off + i] = comp.star_matrix[k][i]
    blocks = None
    if all(c.blocks is not None for c in components):
        blocks = [n for c in components for n in c.blocks]
    return Algebra(field, labels, mult, unit, star, blocks)


def structure_constant_algebra(constants, unit, labels=None, field=EXACT,
                               star_matrix=None) -> Algebra:
    """Algebra from a dense structure-constant tensor c[i][j][k]
    (b_i b_j = sum_k c[i][j][k] b_k).  Verifies associativity,
    unitality and non-degeneracy before returning."""
    dim = len(constants)
    if labels is None:
        labels = [f"b{i + 1}" for i in range(dim)]
    if any(len(row) != dim for row in constants) or any(
        len(cell) != dim for row in constants for cell in row
    ):
        raise SepidemError("structure constant tensor is not well shaped")
    mult = [
        [
            tuple((k, field.coerce(c)) for k, c in enumerate(cell) if not field.is_zero(field.coerce(c)))
            for cell in row
        ]
        for row in constants
    ]
    return Algebra(field, labels, mult, unit, star_matrix, blocks=None,
                   check_nondegenerate=True)


def product_degeneracy_witness(mult, dim, field):
    """Nonzero x with x*A = 0 or A*x = 0, from a raw sparse table.

    Returns (side, coeffs) or None.  Unital tables can never be degenerate
    (left multiplication by x sends the unit to x), so this only fires on
    raw non-unital inputs.
    """
    zero = field.zero
    left = [[zero] * dim for _ in range(dim * dim)]
    right = [[zero] * dim for _ in range(dim * dim)]
    for j in range(dim):
        for i in range(dim):
            for k, c in mult[j][i]:
                left[k * dim + i][j] = left[k * dim + i][j] + c
            for k, c in mult[i][j]:
                right[k * dim + i][j] = right[k * dim + i][j] + c
    kern = linalg.nullspace(left, field)
    if kern:
        return ("left", kern[0])
    kern = linalg.nullspace(right, field)
    if kern:
        return ("right", kern[0])
    return None


def transpose_anti_map(a: Algebra) -> LinearMap:
    """Block-wise transposition of matrix units; an involutive
    anti-isomorphism of any multi-matrix algebra."""
    if a.blocks is None:
        raise NoBlockPresentation("transpose map needs a block presentation")
    rows = [[a.field.zero] * a.dim for _ in range(a.dim)]
    for t in range(a.dim):
        al, i, j = a.block_coordinates(t)
        rows[a.unit_index(al, j, i)][t] = a.field.one
    s0 = LinearMap(a, a, rows)
    s0.assert_anti_multiplicative()
    return s0


def trace_functional(a: Algebra) -> LinearFunctional:
    """Block-wise matrix trace; the value on the unit is the sum of the
    block sizes."""
    if a.blocks is None:
        raise NoBlockPresentation("trace needs a block presentation")
    cov = [a.field.zero] * a.dim
    for t in range(a.dim):
        al, i, j = a.block_coordinates(t)
        if i == j:
            cov[t] = a.field.one
    return LinearFunctional(a, cov)


def element_from_matrix(a: Algebra, entries) -> AlgebraElement:
    """Element of a single-block matrix algebra from an n x n entry grid."""
    if a.blocks is None or len(a.blocks) != 1:
        raise NoBlockPresentation("expected a single matrix block")
    n = a.blocks[0]
    if len(entries) != n or any(len(r) != n for r in entries):
        raise SepidemError(f"expected an {n} x {n} matrix")
    coeffs = [a.field.zero] * a.dim
    for i in range(n):
        for j in range(n):
            coeffs[a.unit_index(0, i, j)] = a.field.coerce(entries[i][j])
    return AlgebraElement(a, coeffs)


def element_as_matrix(x: AlgebraElement):
    """Entry grid of an element of a single-block matrix algebra."""
    a = x.algebra
    if a.blocks is None or len(a.blocks) != 1:
        raise NoBlockPresentation("expected a single matrix block")
    n = a.blocks[0]
    return [[x.coeffs[a.unit_index(0, i, j)] for j in range(n)] for i in range(n)]
