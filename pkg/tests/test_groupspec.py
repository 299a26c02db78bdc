import unittest

from charmonoid.errors import InvalidCycleError, NotNormalError, SizeCapExceeded, SpecSyntaxError, UnknownConstructorError
from charmonoid.groupspec import DirectSpec, NamedSpec, PermSpec, QuotientSpec, build, parse_group_spec, render


class TestParser(unittest.TestCase):
    def test_named(self):
        spec = parse_group_spec("Alt(5)")
        self.assertEqual(spec, NamedSpec("Alt", (5,)))
        self.assertEqual(build(spec).degree, 5)

    def test_whitespace_insensitive(self):
        self.assertEqual(parse_group_spec(" SL ( 2 , 3 ) "), NamedSpec("SL", (2, 3)))

    def test_permutations(self):
        spec = parse_group_spec("Perm[(1,2),(1,2,3)]")
        self.assertIsInstance(spec, PermSpec)
        self.assertEqual(spec.generators, (((1, 2),), ((1, 2, 3),)))
        self.assertEqual(build(spec).order, 6)

    def test_products_of_cycles(self):
        spec = parse_group_spec("Perm[(1,2)(3,4),(1,3)(2,4)]")
        self.assertEqual(build(spec).order, 4)

    def test_nested(self):
        spec = parse_group_spec("Direct(SL(2,3),Cyclic(2))")
        self.assertEqual(spec, DirectSpec(NamedSpec("SL", (2, 3)), NamedSpec("Cyclic", (2,))))
        self.assertEqual(build(spec).order, 48)
        spec = parse_group_spec("Quotient(SL(2,3);center)")
        self.assertEqual(spec, QuotientSpec(NamedSpec("SL", (2, 3)), "center"))
        self.assertEqual(build(spec).order, 12)

    def test_quotient_by_generators(self):
        spec = parse_group_spec("Quotient(SL(2,3);(1,2)(3,6)(4,8)(5,7))")
        self.assertEqual(build(spec).order, 12)
        self.assertEqual(build(parse_group_spec("Quotient(Sym(4);derived)")).order, 2)

    def test_round_trip(self):
        for text in ["Alt(5)", "Perm[(1,2),(1,2,3)]", "Direct(SL(2,3),Cyclic(2))",
                     "Quotient(SL(2,3);center)", "Quotient(Sym(3);(1,2,3))",
                     "Direct(Perm[(1,2)(3,4)],Quotient(GL(2,3);derived))", "Perm[]"]:
            spec = parse_group_spec(text)
            self.assertEqual(render(spec), text)
            self.assertEqual(parse_group_spec(render(spec)), spec)


class TestParseErrors(unittest.TestCase):
    def test_repeated_point(self):
        with self.assertRaises(InvalidCycleError):
            parse_group_spec("Perm[(1,1,2)]")
        with self.assertRaises(InvalidCycleError):
            parse_group_spec("Perm[(1,2)(2,3)]")

    def test_nonpositive_point(self):
        with self.assertRaises(InvalidCycleError):
            parse_group_spec("Perm[(0,1)]")

    def test_unknown_constructor(self):
        with self.assertRaises(UnknownConstructorError):
            parse_group_spec("Foo(3)")

    def test_syntax_position(self):
        with self.assertRaises(SpecSyntaxError) as ctx:
            parse_group_spec("Alt(5")
        self.assertEqual(ctx.exception.position, 5)
        with self.assertRaises(SpecSyntaxError) as ctx:
            parse_group_spec("Alt(5) x")
        self.assertEqual(ctx.exception.position, 7)
        with self.assertRaises(SpecSyntaxError):
            parse_group_spec("Quotient(Alt(5);middle)")

    def test_build_errors(self):
        with self.assertRaises(NotNormalError):
            build(parse_group_spec("Quotient(Sym(3);(1,2))"))
        with self.assertRaises(InvalidCycleError):
            build(parse_group_spec("Quotient(Sym(3);(1,5))"))
        with self.assertRaises(SizeCapExceeded):
            build(parse_group_spec("Direct(Sym(5),Sym(5))"), size_cap=1000)


if __name__ == "__main__":
    unittest.main()
