# -*- coding: utf-8 -*-
"""
Exact linear algebra over the rationals.
===================================================
Scalars are `fractions.Fraction` values. Matrices and vectors are sparse:
only non-zero entries are stored, row by row, and entries that cancel to 0
are dropped immediately. All objects are immutable once built.

Provided here:
    - QMatrix / QVector with products, sums, transposition and stacking,
    - kron / hadamard products,
    - rank and det by fraction-free (Bareiss) elimination,
    - RowSpace, an incremental echelon form used for span closures and for
    solving c·basis = v,
    - star(m) = (I - m)^-1,
    - UPoly / UPolyMatrix for univariate polynomial matrices.
"""
from fractions import Fraction
from functools import reduce
from math import lcm

from .errors import DimensionError, SingularMatrixError, EmptyPolynomialError


def _clean(entries):
    return {key: Fraction(value) for key, value in entries.items() if value != 0}


def _axpy(target, scale, source):
    """target += scale * source, on sparse dicts (in place)."""
    for key, value in source.items():
        new = target.get(key, 0) + scale * value
        if new:
            target[key] = new
        else:
            target.pop(key, None)


class QVector(object):
    """ Sparse rational vector with an orientation ('row' or 'column').
    """

    __slots__ = ('length', 'orientation', '_entries')

    def __init__(self, length, entries=None, orientation='row'):
        if orientation not in ('row', 'column'):
            raise ValueError('orientation must be row or column')
        entries = _clean(entries or {})
        if any(not 0 <= index < length for index in entries):
            raise DimensionError('vector entry outside length {}'.format(length))
        self.length = length
        self.orientation = orientation
        self._entries = entries

    @classmethod
    def from_list(cls, values, orientation='row'):
        return cls(len(values), {i: v for i, v in enumerate(values)}, orientation)

    @classmethod
    def zeros(cls, length, orientation='row'):
        return cls(length, {}, orientation)

    @classmethod
    def unit(cls, length, index, orientation='row'):
        return cls(length, {index: 1}, orientation)

    def __getitem__(self, index):
        if not 0 <= index < self.length:
            raise IndexError(index)
        return self._entries.get(index, Fraction(0))

    def items(self):
        return sorted(self._entries.items())

    def to_list(self):
        return [self._entries.get(i, Fraction(0)) for i in range(self.length)]

    def is_zero(self):
        return not self._entries

    @property
    def T(self):
        return QVector(self.length, self._entries, 'column' if self.orientation == 'row' else 'row')

    def _check_same(self, other):
        if not isinstance(other, QVector) or other.length != self.length or other.orientation != self.orientation:
            raise DimensionError('vectors differ in length or orientation')

    def __add__(self, other):
        self._check_same(other)
        entries = dict(self._entries)
        _axpy(entries, 1, other._entries)
        return QVector(self.length, entries, self.orientation)

    def __sub__(self, other):
        self._check_same(other)
        entries = dict(self._entries)
        _axpy(entries, -1, other._entries)
        return QVector(self.length, entries, self.orientation)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor):
        factor = Fraction(factor)
        return QVector(self.length, {i: factor * v for i, v in self._entries.items()}, self.orientation)

    def __matmul__(self, other):
        if isinstance(other, QVector):
            if self.orientation != 'row' or other.orientation != 'column':
                raise DimensionError('only row @ column products of vectors are defined')
            if self.length != other.length:
                raise DimensionError('vector lengths {} and {} differ'.format(self.length, other.length))
            small, large = sorted((self._entries, other._entries), key=len)
            return sum((v * large[i] for i, v in small.items() if i in large), Fraction(0))
        if isinstance(other, QMatrix):
            if self.orientation != 'row':
                raise DimensionError('a column vector cannot multiply a matrix on the left')
            if self.length != other.rows:
                raise DimensionError('vector of length {} times {}x{} matrix'.format(self.length, other.rows, other.cols))
            result = {}
            for i, v in self._entries.items():
                row = other._rows.get(i)
                if row:
                    _axpy(result, v, row)
            return QVector(other.cols, result, 'row')
        return NotImplemented

    def as_matrix(self):
        if self.orientation == 'row':
            return QMatrix(1, self.length, {0: dict(self._entries)})
        return QMatrix(self.length, 1, {i: {0: v} for i, v in self._entries.items()})

    def __eq__(self, other):
        return (isinstance(other, QVector) and self.length == other.length
                and self.orientation == other.orientation and self._entries == other._entries)

    def __hash__(self):
        return hash((self.length, self.orientation, frozenset(self._entries.items())))

    def __repr__(self):
        return 'QVector({}, {})'.format([str(v) for v in self.to_list()], self.orientation)


class QMatrix(object):
    """ Sparse rational matrix, stored as {row: {col: value}}.
    """

    __slots__ = ('rows', 'cols', '_rows')

    def __init__(self, rows, cols, row_entries=None):
        self.rows = rows
        self.cols = cols
        self._rows = {}
        for i, row in (row_entries or {}).items():
            if not 0 <= i < rows:
                raise DimensionError('row {} outside {}x{} matrix'.format(i, rows, cols))
            cleaned = _clean(row)
            if any(not 0 <= j < cols for j in cleaned):
                raise DimensionError('column outside {}x{} matrix'.format(rows, cols))
            if cleaned:
                self._rows[i] = cleaned

    @classmethod
    def from_rows(cls, rows, cols=None):
        """Dense constructor from a list of lists (cols needed for 0 rows)."""
        width = len(rows[0]) if rows else (cols or 0)
        if any(len(row) != width for row in rows):
            raise DimensionError('ragged rows')
        return cls(len(rows), width, {i: {j: v for j, v in enumerate(row)} for i, row in enumerate(rows)})

    @classmethod
    def from_entries(cls, rows, cols, entries):
        """Constructor from a mapping {(i, j): value}."""
        row_entries = {}
        for (i, j), value in entries.items():
            row_entries.setdefault(i, {})[j] = value
        return cls(rows, cols, row_entries)

    @classmethod
    def from_vectors(cls, vectors, width):
        """Stack row vectors (QVector or sparse dicts) into a matrix."""
        row_entries = {}
        for i, vector in enumerate(vectors):
            row_entries[i] = dict(vector._entries) if isinstance(vector, QVector) else dict(vector)
        return cls(len(vectors), width, row_entries)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def zeros(cls, rows, cols=None):
        return cls(rows, rows if cols is None else cols, {})

    def __getitem__(self, key):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._rows.get(i, {}).get(j, Fraction(0))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def entries(self):
        """Non-zero entries as sorted ((i, j), value) pairs."""
        return [((i, j), v) for i in sorted(self._rows) for j, v in sorted(self._rows[i].items())]

    def nnz(self):
        return sum(len(row) for row in self._rows.values())

    def is_zero(self):
        return not self._rows

    def row(self, i):
        return QVector(self.cols, self._rows.get(i, {}), 'row')

    def col(self, j):
        return QVector(self.rows, {i: row[j] for i, row in self._rows.items() if j in row}, 'column')

    def to_rows(self):
        return [[self._rows.get(i, {}).get(j, Fraction(0)) for j in range(self.cols)] for i in range(self.rows)]

    def transpose(self):
        result = {}
        for i, row in self._rows.items():
            for j, v in row.items():
                result.setdefault(j, {})[i] = v
        return QMatrix(self.cols, self.rows, result)

    @property
    def T(self):
        return self.transpose()

    def _check_same(self, other):
        if not isinstance(other, QMatrix) or other.shape != self.shape:
            raise DimensionError('matrices of shapes {} and {} differ'.format(self.shape, getattr(other, 'shape', None)))

    def __add__(self, other):
        self._check_same(other)
        result = {i: dict(row) for i, row in self._rows.items()}
        for i, row in other._rows.items():
            target = result.setdefault(i, {})
            _axpy(target, 1, row)
        return QMatrix(self.rows, self.cols, result)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor):
        factor = Fraction(factor)
        return QMatrix(self.rows, self.cols, {i: {j: factor * v for j, v in row.items()} for i, row in self._rows.items()})

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise DimensionError('cannot multiply {} by {}'.format(self.shape, other.shape))
            result = {}
            for i, row in self._rows.items():
                acc = {}
                for k, v in row.items():
                    right = other._rows.get(k)
                    if right:
                        _axpy(acc, v, right)
                if acc:
                    result[i] = acc
            return QMatrix(self.rows, other.cols, result)
        if isinstance(other, QVector):
            if other.orientation != 'column':
                raise DimensionError('a matrix multiplies column vectors on the right')
            if self.cols != other.length:
                raise DimensionError('cannot multiply {} by vector of length {}'.format(self.shape, other.length))
            result = {}
            for i, row in self._rows.items():
                value = sum((v * other._entries[j] for j, v in row.items() if j in other._entries), Fraction(0))
                if value:
                    result[i] = value
            return QVector(self.rows, result, 'column')
        return NotImplemented

    def __pow__(self, exponent):
        if self.rows != self.cols:
            raise DimensionError('power of a non-square matrix')
        result = QMatrix.identity(self.rows)
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(self.entries())))

    def __repr__(self):
        return 'QMatrix({})'.format([[str(v) for v in row] for row in self.to_rows()])


def block_diag(a, b):
    """[[a, 0], [0, b]]"""
    result = {i: dict(row) for i, row in a._rows.items()}
    for i, row in b._rows.items():
        result[a.rows + i] = {a.cols + j: v for j, v in row.items()}
    return QMatrix(a.rows + b.rows, a.cols + b.cols, result)


def concat(u, v):
    """Concatenate two vectors of the same orientation."""
    if u.orientation != v.orientation:
        raise DimensionError('cannot concatenate a row and a column vector')
    entries = dict(u._entries)
    entries.update({u.length + i: x for i, x in v._entries.items()})
    return QVector(u.length + v.length, entries, u.orientation)


def kron(a, b):
    """Kronecker product. Two vectors of the same orientation give a vector
    of that orientation; matrices give the block matrix [a_ij * b].
    """
    if isinstance(a, QVector) and isinstance(b, QVector):
        if a.orientation != b.orientation:
            raise DimensionError('kron of a row and a column vector')
        entries = {i * b.length + j: x * y for i, x in a._entries.items() for j, y in b._entries.items()}
        return QVector(a.length * b.length, entries, a.orientation)
    if isinstance(a, QVector):
        a = a.as_matrix()
    if isinstance(b, QVector):
        b = b.as_matrix()
    result = {}
    for i, row in a._rows.items():
        for k, brow in b._rows.items():
            target = result.setdefault(i * b.rows + k, {})
            for j, x in row.items():
                for l, y in brow.items():
                    target[j * b.cols + l] = x * y
    return QMatrix(a.rows * b.rows, a.cols * b.cols, result)


def hadamard(a, b):
    """Entrywise product of two matrices of identical shape."""
    if a.shape != b.shape:
        raise DimensionError('hadamard of shapes {} and {}'.format(a.shape, b.shape))
    result = {}
    for i, row in a._rows.items():
        other = b._rows.get(i)
        if other:
            result[i] = {j: v * other[j] for j, v in row.items() if j in other}
    return QMatrix(a.rows, a.cols, result)


def _integer_rows(a):
    """Dense integer rows of `a`, each row scaled by the lcm of its
    denominators. Returns the rows and the product of the scaling factors.
    """
    rows = []
    scale = 1
    for i in range(a.rows):
        row = a._rows.get(i, {})
        factor = reduce(lcm, (v.denominator for v in row.values()), 1)
        scale *= factor
        rows.append([int(row.get(j, 0) * factor) for j in range(a.cols)])
    return rows, scale


def _bareiss(rows, ncols):
    """Fraction-free elimination in place. Returns (rank, sign, last pivot)."""
    nrows = len(rows)
    rank = 0
    sign = 1
    previous = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        if pivot != rank:
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            sign = -sign
        p = rows[rank][col]
        for r in range(rank + 1, nrows):
            f = rows[r][col]
            rows[r] = [(p * rows[r][c] - f * rows[rank][c]) // previous for c in range(ncols)]
        previous = p
        rank += 1
        if rank == nrows:
            break
    return rank, sign, previous


def rank(a):
    """Rank over Q by fraction-free Gaussian elimination.
    Arguments:
        - a: QMatrix
    Returns:
        - int
    """
    if a.is_zero():
        return 0
    rows, _ = _integer_rows(a)
    return _bareiss(rows, a.cols)[0]


def det(a):
    """Exact determinant of a square matrix (Bareiss)."""
    if a.rows != a.cols:
        raise DimensionError('determinant of a non-square matrix')
    if a.rows == 0:
        return Fraction(1)
    rows, scale = _integer_rows(a)
    found, sign, last = _bareiss(rows, a.cols)
    if found < a.rows:
        return Fraction(0)
    return Fraction(sign * last, scale)


class RowSpace(object):
    """ Incremental echelon form of a list of row vectors.
    Keeps, for every echelon row, its expression as a combination of the
    vectors added so far, so that membership tests also give coefficients.
    Instantiation requires:
        - width: length of the vectors.
    """

    def __init__(self, width):
        self.width = width
        self.vectors = []
        self._echelon = []

    def __len__(self):
        return len(self.vectors)

    def _entries(self, v):
        if isinstance(v, QVector):
            if v.length != self.width:
                raise DimensionError('vector of length {} in a space of width {}'.format(v.length, self.width))
            return dict(v._entries)
        return _clean(v)

    def reduce(self, v):
        """Residual of v against the echelon rows, and the combination
        (over self.vectors) that was subtracted.
        """
        residual = self._entries(v)
        combination = {}
        for pivot, row, combo in self._echelon:
            coefficient = residual.get(pivot)
            if coefficient:
                _axpy(residual, -coefficient, row)
                _axpy(combination, coefficient, combo)
        return residual, combination

    def contains(self, v):
        return not self.reduce(v)[0]

    def add(self, v):
        """Add v if it grows the span. Returns True when it did."""
        residual, combination = self.reduce(v)
        if not residual:
            return False
        pivot = min(residual)
        inverse = 1 / residual[pivot]
        index = len(self.vectors)
        self.vectors.append(QVector(self.width, self._entries(v), 'row'))
        combo = {key: -value for key, value in combination.items()}
        combo[index] = Fraction(1)
        self._echelon.append((pivot,
                              {key: value * inverse for key, value in residual.items()},
                              {key: value * inverse for key, value in combo.items()}))
        return True

    def solve(self, v):
        """Coefficients c with sum_k c_k vectors[k] = v, or None."""
        residual, combination = self.reduce(v)
        if residual:
            return None
        return QVector(len(self.vectors), combination, 'row')

    def matrix(self):
        return QMatrix.from_vectors(self.vectors, self.width)


def solve_in_row_space(basis, v):
    """Coefficients c with c·basis = v when v lies in the row space of
    `basis`, else None. Rows of `basis` need not be independent; free
    coefficients are set to 0.
    Arguments:
        - basis: QMatrix
        - v: QVector (row)
    Returns:
        - QVector (row, length basis.rows) or None
    """
    if v.orientation != 'row' or v.length != basis.cols:
        raise DimensionError('expected a row vector of length {}'.format(basis.cols))
    space = RowSpace(basis.cols)
    kept = []
    for i in range(basis.rows):
        if space.add(basis.row(i)):
            kept.append(i)
    coefficients = space.solve(v)
    if coefficients is None:
        return None
    return QVector(basis.rows, {kept[k]: c for k, c in coefficients._entries.items()}, 'row')


def inverse(a):
    """Exact inverse by Gauss-Jordan elimination."""
    n = a.rows
    if a.cols != n:
        raise DimensionError('inverse of a non-square matrix')
    work = [dict(a._rows.get(i, {})) for i in range(n)]
    result = [{i: Fraction(1)} for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r].get(col)), None)
        if pivot is None:
            raise SingularMatrixError('matrix is singular')
        work[col], work[pivot] = work[pivot], work[col]
        result[col], result[pivot] = result[pivot], result[col]
        factor = 1 / work[col][col]
        work[col] = {j: v * factor for j, v in work[col].items()}
        result[col] = {j: v * factor for j, v in result[col].items()}
        for r in range(n):
            f = work[r].get(col) if r != col else None
            if f:
                _axpy(work[r], -f, work[col])
                _axpy(result[r], -f, result[col])
    return QMatrix(n, n, {i: row for i, row in enumerate(result)})


def star(m):
    """(I - m)^-1, raising SingularMatrixError when I - m is singular."""
    if m.rows != m.cols:
        raise DimensionError('star of a non-square matrix')
    return inverse(QMatrix.identity(m.rows) - m)


class UPoly(object):
    """ Sparse univariate polynomial with rational coefficients.
    """

    __slots__ = ('_terms',)

    def __init__(self, terms=None):
        terms = _clean(terms or {})
        if any(not isinstance(e, int) or e < 0 for e in terms):
            raise ValueError('exponents must be non-negative integers')
        self._terms = terms

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, value):
        return cls({0: value})

    def terms(self):
        return sorted(self._terms.items())

    def coefficient(self, exponent):
        return self._terms.get(exponent, Fraction(0))

    def is_zero(self):
        return not self._terms

    def min_degree(self):
        return min(self._terms) if self._terms else None

    def __add__(self, other):
        terms = dict(self._terms)
        _axpy(terms, 1, other._terms)
        return UPoly(terms)

    def __sub__(self, other):
        terms = dict(self._terms)
        _axpy(terms, -1, other._terms)
        return UPoly(terms)

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly.constant(other)
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                terms[e1 + e2] = terms.get(e1 + e2, 0) + c1 * c2
        return UPoly(terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return 'UPoly(0)'
        return 'UPoly({})'.format(' + '.join('{}x^{}'.format(c, e) for e, c in self.terms()))


def min_degree_term(p):
    """Lowest-exponent monomial of p as (exponent, coefficient)."""
    if p.is_zero():
        raise EmptyPolynomialError('the zero polynomial has no lowest-degree term')
    exponent = p.min_degree()
    return exponent, p.coefficient(exponent)


class UPolyMatrix(object):
    """ Sparse matrix of UPoly entries, stored as {row: {col: UPoly}}.
    """

    __slots__ = ('rows', 'cols', '_rows')

    def __init__(self, rows, cols, row_entries=None):
        self.rows = rows
        self.cols = cols
        self._rows = {}
        for i, row in (row_entries or {}).items():
            kept = {j: p for j, p in row.items() if not p.is_zero()}
            if any(not 0 <= j < cols for j in kept) or not 0 <= i < rows:
                raise DimensionError('entry outside {}x{} matrix'.format(rows, cols))
            if kept:
                self._rows[i] = kept

    @classmethod
    def from_qmatrix(cls, m, exponent=0):
        """m · x^exponent"""
        return cls(m.rows, m.cols, {i: {j: UPoly.monomial(exponent, v) for j, v in row.items()}
                                    for i, row in m._rows.items()})

    @classmethod
    def identity(cls, n):
        return cls(n, n, {i: {i: UPoly.constant(1)} for i in range(n)})

    def __getitem__(self, key):
        i, j = key
        return self._rows.get(i, {}).get(j, UPoly())

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __add__(self, other):
        if other.shape != self.shape:
            raise DimensionError('shapes {} and {} differ'.format(self.shape, other.shape))
        result = {i: dict(row) for i, row in self._rows.items()}
        for i, row in other._rows.items():
            target = result.setdefault(i, {})
            for j, p in row.items():
                target[j] = target[j] + p if j in target else p
        return UPolyMatrix(self.rows, self.cols, result)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionError('cannot multiply {} by {}'.format(self.shape, other.shape))
        result = {}
        for i, row in self._rows.items():
            acc = {}
            for k, p in row.items():
                for j, q in other._rows.get(k, {}).items():
                    product = p * q
                    acc[j] = acc[j] + product if j in acc else product
            result[i] = acc
        return UPolyMatrix(self.rows, other.cols, result)

    def __eq__(self, other):
        return isinstance(other, UPolyMatrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(sorted((i, j, p) for i, r in self._rows.items() for j, p in r.items()))))


def upoly_matrix_product(terms):
    """T_1 T_2 ... T_k for a non-empty sequence of UPolyMatrix."""
    if not terms:
        raise ValueError('empty product')
    return reduce(lambda left, right: left @ right, terms)


def upoly_matrix_product_sum(terms, left=None, right=None):
    """Sum over i = 0..k of  left · T_1 ... T_i · right.
    `left` and `right` default to the identity, in which case the result is
    I + T_1 + T_1 T_2 + ... The running product is carried left to right so
    a 1-row `left` keeps every intermediate product a single row.
    Arguments:
        - terms: list of square UPolyMatrix of equal size
        - left: UPolyMatrix or None
        - right: UPolyMatrix or None
    Returns:
        - UPolyMatrix
    """
    if left is None:
        if not terms and right is None:
            raise ValueError('size unknown without terms or boundary matrices')
        size = terms[0].rows if terms else right.rows
        left = UPolyMatrix.identity(size)
    running = left
    total = left if right is None else left @ right
    for term in terms:
        running = running @ term
        total = total + (running if right is None else running @ right)
    return total
