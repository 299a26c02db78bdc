import logging
from math import factorial, gcd
from typing import Callable, Dict, List, Sequence, Tuple

from .errors import InputError, OrderMismatchError, SizeCapExceeded, UnknownConstructorError
from .fields import GaloisField, galois_field, prime_power
from .perm import DEFAULT_SIZE_CAP, Permutation, PermGroup

logger = logging.getLogger(__name__)

Matrix = List[List[int]]


def _sl_order(n: int, q: int) -> int:
    order = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= q ** i - 1
    return order


class LinearModule:
    """
    F_q^n with its nonzero vectors numbered by (base-q code of the coordinates) - 1,
    first coordinate most significant. Matrices act on row vectors from the right.
    """
    def __init__(self, n: int, field: GaloisField, projective: bool = False):
        self.n = n
        self.field = field
        self.projective = projective
        q = field.q
        vectors = [self._decode(code) for code in range(1, q ** n)]
        if projective:
            vectors = [v for v in vectors if v[self._lead(v)] == 1]
        self.vectors = vectors
        self.position: Dict[Tuple[int, ...], int] = {v: i for i, v in enumerate(vectors)}

    def _decode(self, code: int) -> Tuple[int, ...]:
        q = self.field.q
        return tuple((code // q ** (self.n - 1 - i)) % q for i in range(self.n))

    @staticmethod
    def _lead(v) -> int:
        return next(i for i, c in enumerate(v) if c)

    def _normalize(self, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not self.projective:
            return v
        scale = int(self.field.inv[v[self._lead(v)]])
        return tuple(int(self.field.mul[scale, c]) for c in v)

    @property
    def degree(self) -> int:
        return len(self.vectors)

    def apply(self, v: Tuple[int, ...], matrix: Matrix) -> Tuple[int, ...]:
        F = self.field
        out = []
        for j in range(self.n):
            acc = 0
            for i in range(self.n):
                acc = int(F.add[acc, F.mul[v[i], matrix[i][j]]])
            out.append(acc)
        return tuple(out)

    def permutation(self, matrix: Matrix, twist: Callable[[int], int] = None) -> Permutation:
        """Permutation induced by v -> (v M)^twist, twist applied coordinatewise."""
        images = []
        for v in self.vectors:
            w = self.apply(v, matrix)
            if twist is not None:
                w = tuple(twist(c) for c in w)
            images.append(self.position[self._normalize(w)])
        return Permutation(tuple(images))


def _identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _transvections(n: int, field: GaloisField) -> List[Matrix]:
    """Elementary transvections I + b E_ij for i != j and b in an F_p-basis of F_q."""
    result = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for b in field.basis():
                m = _identity_matrix(n)
                m[i][j] = b
                result.append(m)
    return result


def _linear_group(n: int, q: int, general: bool, projective: bool, size_cap: int, name: str) -> PermGroup:
    if n < 2:
        raise InputError("matrix groups need dimension at least 2")
    field = galois_field(q)
    module = LinearModule(n, field, projective=projective)
    matrices = _transvections(n, field)
    if general:
        diag = _identity_matrix(n)
        diag[0][0] = field.primitive
        matrices.append(diag)
    gens = [module.permutation(m) for m in matrices]
    return PermGroup(module.degree, gens, size_cap, name=name)


def _mathieu10(size_cap: int) -> PermGroup:
    """PSL(2,9) on the projective line extended by [x:y] -> [nu x^3 : y^3], nu a non-square."""
    field = galois_field(9)
    module = LinearModule(2, field, projective=True)
    gens = [module.permutation(m) for m in _transvections(2, field)]
    scale = _identity_matrix(2)
    scale[0][0] = field.primitive
    gens.append(module.permutation(scale, twist=field.frobenius))
    return PermGroup(module.degree, gens, size_cap, name="Mathieu(10)")


def _mathieu11(size_cap: int) -> PermGroup:
    cycles = [[list(range(11))], [[2, 6, 10, 7], [3, 9, 4, 5]]]
    gens = [Permutation.from_cycles(c, 11) for c in cycles]
    return PermGroup(11, gens, size_cap, name="Mathieu(11)")


def _sym(n: int, size_cap: int) -> PermGroup:
    gens = []
    if n >= 2:
        gens = [Permutation.from_cycles([[0, 1]], n), Permutation.from_cycles([list(range(n))], n)]
    return PermGroup(n, gens, size_cap, name=f"Sym({n})")


def _alt(n: int, size_cap: int) -> PermGroup:
    gens = [Permutation.from_cycles([[0, 1, i]], n) for i in range(2, n)]
    return PermGroup(n, gens, size_cap, name=f"Alt({n})")


def _cyclic(n: int, size_cap: int) -> PermGroup:
    gens = [Permutation.from_cycles([list(range(n))], n)] if n >= 2 else []
    return PermGroup(n, gens, size_cap, name=f"Cyclic({n})")


def _dihedral(m: int, size_cap: int) -> PermGroup:
    if m == 2:
        return PermGroup(2, [Permutation.from_cycles([[0, 1]], 2)], size_cap, name="Dihedral(2)")
    if m == 4:
        gens = [Permutation.from_cycles([[0, 1], [2, 3]], 4), Permutation.from_cycles([[0, 2], [1, 3]], 4)]
        return PermGroup(4, gens, size_cap, name="Dihedral(4)")
    n = m // 2
    rotation = Permutation.from_cycles([list(range(n))], n)
    reflection = Permutation.from_cycles([[i, n - i] for i in range(1, (n + 1) // 2)], n)
    return PermGroup(n, [rotation, reflection], size_cap, name=f"Dihedral({m})")


def expected_order(name: str, args: Sequence[int]) -> int:
    """Order of the named group, validated before anything is built."""
    def need(count: int):
        if len(args) != count:
            raise InputError(f"{name} takes {count} argument(s), got {len(args)}")
        if any(a < 1 for a in args):
            raise InputError(f"{name} arguments must be positive")

    if name in ("Sym", "Alt", "Cyclic", "Dihedral", "Mathieu"):
        need(1)
    elif name in ("SL", "GL", "PSL"):
        need(2)
        prime_power(args[1])
    else:
        raise UnknownConstructorError(f"unknown group constructor {name!r}")

    if name == "Sym":
        return factorial(args[0])
    if name == "Alt":
        return max(factorial(args[0]) // 2, 1)
    if name == "Cyclic":
        return args[0]
    if name == "Dihedral":
        if args[0] % 2:
            raise InputError("Dihedral(m) needs an even order m")
        return args[0]
    if name == "Mathieu":
        if args[0] not in (10, 11):
            raise UnknownConstructorError(f"Mathieu({args[0]}) is not supported")
        return {10: 720, 11: 7920}[args[0]]
    n, q = args
    if n < 2:
        raise InputError(f"{name}(n, q) needs n >= 2")
    if name == "SL":
        return _sl_order(n, q)
    if name == "GL":
        return (q - 1) * _sl_order(n, q)
    return _sl_order(n, q) // gcd(n, q - 1)


def construct_named(name: str, args: Sequence[int], size_cap: int = DEFAULT_SIZE_CAP) -> PermGroup:
    order = expected_order(name, args)
    if order > size_cap:
        raise SizeCapExceeded(order, size_cap, f"{name}{tuple(args)}")
    label = f"{name}({','.join(str(a) for a in args)})"
    if name == "Sym":
        G = _sym(args[0], size_cap)
    elif name == "Alt":
        G = _alt(args[0], size_cap)
    elif name == "Cyclic":
        G = _cyclic(args[0], size_cap)
    elif name == "Dihedral":
        G = _dihedral(args[0], size_cap)
    elif name == "Mathieu":
        G = _mathieu10(size_cap) if args[0] == 10 else _mathieu11(size_cap)
    else:
        n, q = args
        G = _linear_group(n, q, general=(name == "GL"), projective=(name == "PSL"),
                          size_cap=size_cap, name=label)
    G.name = label
    if G.order != order:
        raise OrderMismatchError(f"{label} was built with order {G.order}, expected {order}")
    logger.info("constructed %s of order %d on %d points", label, order, G.degree)
    return G
