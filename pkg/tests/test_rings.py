import random

import pytest

from steinberg import rings as R


def ext_euclid_inverse(a, n):
    # independent oracle: extended Euclid
    old_r, r = a % n, n
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    assert old_r == 1
    return old_s % n


def test_mod_add():
    z5 = R.integers_mod(5)
    assert (R.from_int(z5, 3) + R.from_int(z5, 4)).data == 2


def test_poly_difference_of_squares():
    ztu = R.polynomial_ring(R.integers(), ("t", "u"))
    t, u = R.variable(ztu, "t"), R.variable(ztu, "u")
    prod = (t + u) * (t - u)
    assert prod == t * t - u * u
    assert str(prod) == "t^2 - u^2"


def test_laurent_unit_cancellation():
    lz5 = R.laurent_ring(R.integers_mod(5), "t")
    t = R.variable(lz5, "t")
    tinv = R.inverse(t)
    assert (tinv * t).is_one()


def test_units_of_finite_rings():
    assert [u.data for u in R.units(R.integers_mod(6))] == [1, 5]
    assert [u.data for u in R.units(R.prime_field(7))] == [1, 2, 3, 4, 5, 6]
    assert [u.data for u in R.units(R.integers_mod(4))] == [1, 3]


def test_units_brute_force_small_rings():
    for n in range(2, 51):
        zn = R.integers_mod(n)
        brute = [
            a.data
            for a in R.elements(zn)
            if any((a * b).is_one() for b in R.elements(zn))
        ]
        assert [u.data for u in R.units(zn)] == brute


def test_units_infinite_ring_rejected():
    with pytest.raises(ValueError):
        R.units(R.integers())


def test_inverse_examples():
    z7 = R.integers_mod(7)
    assert R.inverse(R.from_int(z7, 3)).data == ext_euclid_inverse(3, 7) == 5
    assert R.inverse(R.one(z7)).is_one()
    assert R.inverse(R.from_int(z7, -1)).data == 6
    with pytest.raises(ValueError):
        R.inverse(R.zero(z7))
    with pytest.raises(ValueError):
        R.inverse(R.from_int(R.integers_mod(6), 2))


def test_laurent_shift():
    lz = R.laurent_ring(R.integers(), "t")
    assert R.laurent_shift(R.one(lz), 3) == R.laurent_monomial(lz, 3)
    assert R.laurent_shift(R.laurent_monomial(lz, -1), 1).is_one()
    lz5 = R.laurent_ring(R.integers_mod(5), "t")
    a = R.variable(lz5, "t").scale(2) + R.one(lz5)  # 2t + 1
    shifted = R.laurent_shift(a, -2)
    assert str(shifted) == "2*t^-1 + t^-2"


def test_canonical_form_idempotent():
    ztu = R.polynomial_ring(R.integers(), ("t", "u"))
    t, u = R.variable(ztu, "t"), R.variable(ztu, "u")
    a = t * u - t * u + t  # zero term must be trimmed
    assert a == t
    assert (a - t).is_zero()
    assert (a - t).data == ()


def test_evaluation_homomorphism_random():
    rng = random.Random(7)
    ztu = R.polynomial_ring(R.integers_mod(9), ("t", "u"))
    z9 = R.integers_mod(9)
    t, u = R.variable(ztu, "t"), R.variable(ztu, "u")

    def rand_poly():
        acc = R.zero(ztu)
        for _ in range(rng.randrange(1, 5)):
            term = R.from_int(ztu, rng.randrange(-8, 9))
            for _ in range(rng.randrange(0, 3)):
                term = term * (t if rng.random() < 0.5 else u)
            acc = acc + term
        return acc

    for _ in range(60):
        a, b = rand_poly(), rand_poly()
        point = {
            "t": R.from_int(z9, rng.randrange(9)),
            "u": R.from_int(z9, rng.randrange(9)),
        }
        assert R.substitute(a + b, point) == R.substitute(a, point) + R.substitute(
            b, point
        )
        assert R.substitute(a * b, point) == R.substitute(a, point) * R.substitute(
            b, point
        )


def test_parse_round_trip():
    cases = [
        (R.integers(), ["-12", "0", "7"]),
        (R.integers_mod(5), ["3", "0"]),
        (R.polynomial_ring(R.integers(), ("t", "u")), ["3*t^2*u - t + 1", "0", "-t"]),
        (R.laurent_ring(R.integers_mod(5), "t"), ["2*t^-1", "t^3 + 4", "0"]),
    ]
    for desc, texts in cases:
        for text in texts:
            a = R.parse_element(desc, text)
            assert R.parse_element(desc, str(a)) == a


def test_parse_descriptor_round_trip():
    for text in ["Z", "Z/6", "GF(7)", "Z[t,u]", "GF(5)[t]", "Z/5[t^+-1]"]:
        d = R.parse_descriptor(text)
        assert R.parse_descriptor(str(d)) == d


def test_descriptor_mismatch_rejected():
    with pytest.raises(ValueError):
        R.one(R.integers()) + R.one(R.integers_mod(5))


def test_power_with_negative_exponent():
    z7 = R.integers_mod(7)
    a = R.from_int(z7, 3)
    assert R.power(a, -2) == R.inverse(a) * R.inverse(a)
    assert R.power(a, 0).is_one()


def test_exact_div_int():
    ztu = R.polynomial_ring(R.integers(), ("t",))
    t = R.variable(ztu, "t")
    assert R.exact_div_int(t.scale(6), 3) == t.scale(2)
    with pytest.raises(ValueError):
        R.exact_div_int(t.scale(5), 3)
