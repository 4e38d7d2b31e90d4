"""The compiled kernel and its pure-Python twin must agree exactly."""

import random
from fractions import Fraction

import pytest

from robyclif import kernel
from robyclif.freealg import char_poly, split_algebra
from robyclif.poly import parse_poly
from robyclif.scalars import make_root

needs_compiled = pytest.mark.skipif(
    "cython" not in kernel.available_backends(),
    reason="compiled kernel not built",
)

PY = kernel.get_module("python")


def random_terms(rng, *, width=3, size=6, cyclotomic=False):
    out = {}
    for _ in range(size):
        exp = tuple(rng.randrange(0, 4) for _ in range(width))
        c = Fraction(rng.randrange(-9, 10), rng.randrange(1, 7))
        if cyclotomic and rng.random() < 0.5:
            c = make_root(4) * c + rng.randrange(-2, 3)
        if c:
            out[exp] = c
    return out


def assert_no_zeros(terms):
    assert all(terms.values()), "a zero coefficient slipped into a term map"


@needs_compiled
class TestBackendAgreement:
    CY = None

    @classmethod
    def setup_class(cls):
        cls.CY = kernel.get_module("cython")

    def test_binary_ops(self):
        rng = random.Random(11)
        for trial in range(40):
            cyc = trial % 3 == 0
            a = random_terms(rng, cyclotomic=cyc)
            b = random_terms(rng, cyclotomic=cyc)
            for name in ("add_terms", "sub_terms", "mul_terms"):
                got = getattr(self.CY, name)(a, b)
                want = getattr(PY, name)(a, b)
                assert got == want, f"{name} disagrees on trial {trial}"
                assert_no_zeros(got)

    def test_unary_ops(self):
        rng = random.Random(12)
        for _ in range(20):
            a = random_terms(rng)
            assert self.CY.neg_terms(a) == PY.neg_terms(a)
            c = Fraction(rng.randrange(-5, 6), rng.randrange(1, 4))
            assert self.CY.scale_terms(a, c) == PY.scale_terms(a, c)
        assert self.CY.scale_terms(a, Fraction(0)) == {}

    def test_mul_into_accumulates(self):
        rng = random.Random(13)
        for _ in range(20):
            acc_cy = random_terms(rng)
            acc_py = dict(acc_cy)
            a = random_terms(rng)
            b = random_terms(rng)
            self.CY.mul_into(acc_cy, a, b)
            PY.mul_into(acc_py, a, b)
            assert acc_cy == acc_py
            assert_no_zeros(acc_cy)

    def test_matmul(self):
        rng = random.Random(14)
        for _ in range(10):
            n, k, m = rng.randrange(1, 4), rng.randrange(1, 4), rng.randrange(1, 4)
            a = [random_terms(rng, size=3) for _ in range(n * k)]
            b = [random_terms(rng, size=3) for _ in range(k * m)]
            assert self.CY.matmul_terms(a, b, n, k, m) == PY.matmul_terms(a, b, n, k, m)

    def test_matmul_empty_inner(self):
        assert self.CY.matmul_terms([], [], 2, 0, 2) == [{}, {}, {}, {}]

    def test_cancellation_prunes(self):
        a = {(1, 0): Fraction(3)}
        b = {(1, 0): Fraction(-3), (0, 1): Fraction(2)}
        out = self.CY.add_terms(a, b)
        assert out == {(0, 1): Fraction(2)}
        prod = self.CY.mul_terms(
            {(1,): Fraction(1), (0,): Fraction(1)},
            {(1,): Fraction(1), (0,): Fraction(-1)},
        )
        assert prod == {(2,): Fraction(1), (0,): Fraction(-1)}


class TestBackendSelection:
    def teardown_method(self):
        kernel.set_backend("auto")

    def test_set_backend_rebinds(self):
        assert kernel.set_backend("python") == "python"
        assert kernel.active_backend() == "python"
        assert kernel.mul_terms is PY.mul_terms

    def test_unknown_backend(self):
        with pytest.raises(ValueError, match="unknown backend"):
            kernel.get_module("fortran")

    def test_auto_prefers_compiled(self):
        got = kernel.set_backend("auto")
        if "cython" in kernel.available_backends():
            assert got == "cython"
        else:
            assert got == "python"

    @needs_compiled
    def test_same_charpoly_both_ways(self):
        results = []
        for name in ("python", "cython"):
            kernel.set_backend(name)
            p = parse_poly("x^2 - y^2") * parse_poly("x + 3*y") - parse_poly("x*y*z")
            results.append((char_poly(split_algebra(3)).poly, p))
        assert results[0] == results[1]
