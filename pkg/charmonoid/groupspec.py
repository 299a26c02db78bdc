"""
Group descriptors:

    spec  := Name '(' int (',' int)* ')'
           | 'Perm' '[' [gen (',' gen)*] ']'
           | 'Direct' '(' spec ',' spec ')'
           | 'Quotient' '(' spec ';' ( gen (',' gen)* | 'center' | 'derived' ) ')'
    gen   := cycle+          (a product of disjoint cycles)
    cycle := '(' [int (',' int)*] ')'

Points are 1-based and whitespace is ignored.
"""
from dataclasses import dataclass
from typing import List, Tuple, Union

from .errors import InputError, InvalidCycleError, SpecSyntaxError, UnknownConstructorError
from .named import construct_named
from .perm import (DEFAULT_SIZE_CAP, Permutation, PermGroup, center, derived_subgroup,
                   direct_product, quotient_group)

NAMED = ("Sym", "Alt", "Cyclic", "Dihedral", "SL", "GL", "PSL", "Mathieu")
NORMAL_KEYWORDS = ("center", "derived")

Generator = Tuple[Tuple[int, ...], ...]


def _render_generators(gens: Tuple[Generator, ...]) -> str:
    return ",".join("".join("(" + ",".join(str(a) for a in c) + ")" for c in g) or "()" for g in gens)


@dataclass(frozen=True)
class NamedSpec:
    name: str
    args: Tuple[int, ...]

    def render(self) -> str:
        return f"{self.name}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class PermSpec:
    generators: Tuple[Generator, ...]

    @property
    def degree(self) -> int:
        return max((a for g in self.generators for c in g for a in c), default=1)

    def render(self) -> str:
        return f"Perm[{_render_generators(self.generators)}]"


@dataclass(frozen=True)
class DirectSpec:
    left: "GroupSpec"
    right: "GroupSpec"

    def render(self) -> str:
        return f"Direct({self.left.render()},{self.right.render()})"


@dataclass(frozen=True)
class QuotientSpec:
    base: "GroupSpec"
    normal: Union[str, Tuple[Generator, ...]]

    def render(self) -> str:
        normal = self.normal if isinstance(self.normal, str) else _render_generators(self.normal)
        return f"Quotient({self.base.render()};{normal})"


GroupSpec = Union[NamedSpec, PermSpec, DirectSpec, QuotientSpec]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        # (char, position in the original text) with whitespace removed
        self.chars = [(ch, i) for i, ch in enumerate(text) if not ch.isspace()]
        self.pos = 0

    def _here(self) -> int:
        return self.chars[self.pos][1] if self.pos < len(self.chars) else len(self.text)

    def _error(self, message: str):
        raise SpecSyntaxError(message, self._here(), self.text)

    def _peek(self) -> str:
        return self.chars[self.pos][0] if self.pos < len(self.chars) else ""

    def _expect(self, ch: str):
        if self._peek() != ch:
            found = self._peek() or "end of input"
            self._error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def _word(self) -> str:
        start = self.pos
        while self._peek().isalpha():
            self.pos += 1
        return "".join(ch for ch, _ in self.chars[start:self.pos])

    def _int(self) -> int:
        start = self.pos
        while self._peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self._error("expected an integer")
        return int("".join(ch for ch, _ in self.chars[start:self.pos]))

    def parse(self) -> GroupSpec:
        spec = self._spec()
        if self.pos != len(self.chars):
            self._error("unexpected trailing input")
        return spec

    def _spec(self) -> GroupSpec:
        at = self.pos
        word = self._word()
        if not word:
            self._error("expected a group constructor")
        if word == "Perm":
            self._expect("[")
            gens = self._generators("]")
            self._expect("]")
            return PermSpec(gens)
        if word == "Direct":
            self._expect("(")
            left = self._spec()
            self._expect(",")
            right = self._spec()
            self._expect(")")
            return DirectSpec(left, right)
        if word == "Quotient":
            self._expect("(")
            base = self._spec()
            self._expect(";")
            save = self.pos
            keyword = self._word()
            if keyword in NORMAL_KEYWORDS:
                normal: Union[str, Tuple[Generator, ...]] = keyword
            elif keyword:
                self.pos = save
                self._error(f"unknown normal subgroup keyword {keyword!r}")
            else:
                normal = self._generators(")")
            self._expect(")")
            return QuotientSpec(base, normal)
        if word not in NAMED:
            raise UnknownConstructorError(f"unknown group constructor {word!r} at position {self.chars[at][1]}")
        self._expect("(")
        args = [self._int()]
        while self._peek() == ",":
            self.pos += 1
            args.append(self._int())
        self._expect(")")
        return NamedSpec(word, tuple(args))

    def _generators(self, closing: str) -> Tuple[Generator, ...]:
        gens: List[Generator] = []
        if self._peek() == closing:
            return ()
        gens.append(self._generator())
        while self._peek() == ",":
            self.pos += 1
            gens.append(self._generator())
        return tuple(gens)

    def _generator(self) -> Generator:
        if self._peek() != "(":
            self._error("expected a cycle")
        cycles: List[Tuple[int, ...]] = []
        seen = set()
        while self._peek() == "(":
            self.pos += 1
            cycle: List[int] = []
            if self._peek() != ")":
                cycle.append(self._point(seen))
                while self._peek() == ",":
                    self.pos += 1
                    cycle.append(self._point(seen))
            self._expect(")")
            if cycle:
                cycles.append(tuple(cycle))
        return tuple(cycles)

    def _point(self, seen: set) -> int:
        at = self._here()
        a = self._int()
        if a < 1:
            raise InvalidCycleError(f"point {a} at position {at} is not positive")
        if a in seen:
            raise InvalidCycleError(f"point {a} at position {at} is repeated")
        seen.add(a)
        return a


def parse_group_spec(text: str) -> GroupSpec:
    return _Parser(text).parse()


def render(spec: GroupSpec) -> str:
    return spec.render()


def _permutations(gens: Tuple[Generator, ...], degree: int) -> List[Permutation]:
    return [Permutation.from_cycles([[a - 1 for a in c] for c in g], degree) for g in gens]


def build(spec: GroupSpec, size_cap: int = DEFAULT_SIZE_CAP) -> PermGroup:
    """Realize a descriptor as a permutation group, failing fast above the size cap."""
    if isinstance(spec, NamedSpec):
        return construct_named(spec.name, spec.args, size_cap)
    if isinstance(spec, PermSpec):
        G = PermGroup(spec.degree, _permutations(spec.generators, spec.degree), size_cap, spec.render())
        G.check_cap(spec.render())
        return G
    if isinstance(spec, DirectSpec):
        G = direct_product(build(spec.left, size_cap), build(spec.right, size_cap), size_cap)
        G.name = spec.render()
        return G
    if isinstance(spec, QuotientSpec):
        G = build(spec.base, size_cap)
        if spec.normal == "center":
            N = center(G)
        elif spec.normal == "derived":
            N = derived_subgroup(G)
        else:
            degree = max((a for g in spec.normal for c in g for a in c), default=1)
            if degree > G.degree:
                raise InvalidCycleError(f"normal subgroup moves point {degree} but the group has degree {G.degree}")
            N = PermGroup(G.degree, _permutations(spec.normal, G.degree), size_cap)
        Q = quotient_group(G, N)
        Q.name = spec.render()
        return Q
    raise InputError(f"not a group descriptor: {spec!r}")
