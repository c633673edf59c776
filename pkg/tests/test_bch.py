"""BCH parity columns, separability, and syndrome decoding."""

import itertools
import random

import numpy as np
import pytest

from qgt.bch import (
    BchSpec,
    DecodeFailure,
    build_parity_columns,
    decode_syndrome,
    find_error_locator,
    find_roots,
    make_bch,
    poly_eval,
    syndrome_from_bits,
)
from qgt.gf2m import make_field

# frozen single-error parity matrix over GF(2^3), full length r = 7
H_T1_B3 = np.array(
    [
        [0, 0, 1, 0, 1, 1, 1],
        [0, 1, 0, 1, 1, 1, 0],
        [1, 0, 0, 1, 0, 1, 1],
    ],
    dtype=np.uint8,
)


def syndrome_of(spec, columns, positions):
    bits = np.zeros(spec.syndrome_bits, dtype=np.int64)
    for j in positions:
        bits ^= columns[:, j].astype(np.int64)
    return syndrome_from_bits(spec, bits.astype(np.uint8))


def test_parity_columns_t1_b3_golden():
    spec = make_bch(3, 1, 7)
    assert build_parity_columns(spec).tolist() == H_T1_B3.tolist()


def test_parity_columns_shortening_prefix():
    full = build_parity_columns(make_bch(3, 1, 7))
    short = build_parity_columns(make_bch(3, 1, 3))
    assert short.tolist() == full[:, :3].tolist()
    assert short.shape == (3, 3)


def test_parity_columns_power_structure():
    # row block k of column j is the bit expansion of alpha^((2k+1) j)
    spec = make_bch(4, 2, 15)
    f = spec.field
    cols = build_parity_columns(spec)
    assert cols.shape == (8, 15)
    for j in (0, 1, 5, 14):
        assert cols[:4, j].tolist() == f.bit_column(f.alpha_pow(j)).tolist()
        assert cols[4:, j].tolist() == f.bit_column(f.alpha_pow(3 * j)).tolist()


def test_spec_validation():
    with pytest.raises(ValueError):
        make_bch(3, 0, 7)
    with pytest.raises(ValueError):
        make_bch(3, 9, 7)
    with pytest.raises(ValueError):
        make_bch(3, 4, 7)  # t >= 2^(b-1)
    with pytest.raises(ValueError):
        make_bch(3, 1, 8)  # r > n
    with pytest.raises(ValueError):
        make_bch(3, 1, 0)


def test_two_separability_exhaustive_b4():
    # all 121 integer sums of <= 2 distinct columns are pairwise distinct
    spec = make_bch(4, 2, 15)
    cols = build_parity_columns(spec).astype(np.int64)
    sums = {(): tuple(np.zeros(8, dtype=np.int64))}
    for w in (1, 2):
        for subset in itertools.combinations(range(15), w):
            sums[subset] = tuple(cols[:, list(subset)].sum(axis=1))
    assert len(sums) == 121
    assert len(set(sums.values())) == 121


def test_sub_separability_small():
    # s-separability for s < t: weight <= 1 sums distinct under a t=2 matrix
    spec = make_bch(3, 2, 7)
    cols = build_parity_columns(spec).astype(np.int64)
    seen = {tuple(np.zeros(6, dtype=np.int64))}
    for j in range(7):
        seen.add(tuple(cols[:, j]))
    assert len(seen) == 8


def test_syndrome_pack_unpack_round_trip():
    spec = make_bch(5, 3, 20)
    f = spec.field
    rng = random.Random(5)
    for _ in range(50):
        values = [rng.randrange(f.order + 1) for _ in range(3)]
        bits = np.concatenate([f.bit_column(v) for v in values])
        assert syndrome_from_bits(spec, bits) == values
    with pytest.raises(ValueError):
        syndrome_from_bits(spec, np.zeros(7, dtype=np.uint8))


def test_syndrome_matches_power_sums():
    # column-sum syndrome equals the field power sums of the error locators
    spec = make_bch(4, 2, 15)
    f = spec.field
    cols = build_parity_columns(spec)
    for positions in [(0, 5), (3, 11), (14,)]:
        syn = syndrome_of(spec, cols, positions)
        s1 = 0
        s3 = 0
        for j in positions:
            s1 ^= f.alpha_pow(j)
            s3 ^= f.alpha_pow(3 * j)
        assert syn == [s1, s3]


def test_locator_zero_syndrome():
    spec = make_bch(4, 2, 15)
    locator, length = find_error_locator(spec, [0, 0])
    assert locator == [1]
    assert length == 0


def test_locator_single_error():
    spec = make_bch(3, 1, 7)
    f = spec.field
    for j in range(7):
        locator, length = find_error_locator(spec, [f.alpha_pow(j)])
        assert length == 1
        # sigma(x) = 1 + alpha^j x, root alpha^(-j)
        assert poly_eval(f, locator, f.alpha_pow(-j)) == 0


def test_locator_matches_product_form():
    # locator from syndromes equals prod (1 - alpha^j x) expanded directly
    spec = make_bch(6, 4, 63)
    f = spec.field
    rng = random.Random(63)
    for _ in range(100):
        w = rng.randrange(1, 5)
        positions = rng.sample(range(63), w)
        syn = [0] * 4
        for k in range(4):
            for j in positions:
                syn[k] ^= f.alpha_pow((2 * k + 1) * j)
        locator, length = find_error_locator(spec, syn)
        expected = [1]
        for j in positions:
            a = f.alpha_pow(j)
            expected = [expected[0]] + [
                expected[i] ^ f.mul(a, expected[i - 1]) for i in range(1, len(expected))
            ] + [f.mul(a, expected[-1])]
        assert length == w
        assert locator == expected


@pytest.mark.parametrize("method", ["chien", "direct"])
def test_decode_exhaustive_b4_t2(method):
    # every weight <= 2 pattern on the full-length code decodes exactly
    spec = make_bch(4, 2, 15)
    cols = build_parity_columns(spec)
    patterns = [()] + [(j,) for j in range(15)] + list(itertools.combinations(range(15), 2))
    assert len(patterns) == 121
    for positions in patterns:
        syn = syndrome_of(spec, cols, positions)
        assert decode_syndrome(spec, syn, len(positions), method=method) == set(positions)


def test_decode_exhaustive_b3_t1_all_singles():
    spec = make_bch(3, 1, 7)
    cols = build_parity_columns(spec)
    for j in range(7):
        syn = syndrome_of(spec, cols, (j,))
        assert decode_syndrome(spec, syn, 1) == {j}


def test_decode_random_patterns_never_fail():
    # randomized perfect-decoding sweep across fields and radii
    rng = random.Random(20240817)
    cases = 0
    for degree in (6, 8, 10):
        for t in (1, 2, 3, 4):
            spec = make_bch(degree, t, spec_r(degree))
            cols = build_parity_columns(spec)
            for _ in range(850):
                w = rng.randrange(0, t + 1)
                positions = rng.sample(range(spec.r), w) if w else []
                syn = syndrome_of(spec, cols, positions)
                method = "direct" if rng.random() < 0.5 else "chien"
                assert decode_syndrome(spec, syn, w, method=method) == set(positions)
                cases += 1
    assert cases == 3 * 4 * 850


def spec_r(degree):
    # exercise shortened lengths, not just full codes
    return (1 << degree) * 3 // 5


def test_decode_rejects_out_of_range_roots():
    # syndrome of a column beyond the shortened range must fail, not alias
    spec_full = make_bch(4, 1, 15)
    spec_short = make_bch(4, 1, 6)
    cols = build_parity_columns(spec_full)
    syn = syndrome_of(spec_full, cols, (10,))
    with pytest.raises(DecodeFailure):
        decode_syndrome(spec_short, syn, 1)


def test_decode_rejects_wrong_weight():
    spec = make_bch(4, 2, 15)
    cols = build_parity_columns(spec)
    syn = syndrome_of(spec, cols, (3, 7))
    with pytest.raises(DecodeFailure):
        decode_syndrome(spec, syn, 1)
    with pytest.raises(DecodeFailure):
        decode_syndrome(spec, [1, 0], 0)
    with pytest.raises(DecodeFailure):
        decode_syndrome(spec, syn, 3)  # beyond t


@pytest.mark.parametrize("degree", [4, 6, 8, 9])
def test_chien_direct_agree_on_random_locators(degree):
    # random polynomials with constant term 1, degree <= 4: identical root
    # sets whether or not the polynomial splits
    f = make_field(degree)
    spec = make_bch(degree, 2, f.order)
    rng = random.Random(degree * 101)
    for _ in range(2500):
        d = rng.randrange(1, 5)
        coeffs = [1] + [rng.randrange(f.order + 1) for _ in range(d - 1)]
        coeffs.append(rng.randrange(1, f.order + 1))  # leading coefficient nonzero
        chien = find_roots(spec, coeffs, method="chien")
        direct = find_roots(spec, coeffs, method="direct")
        assert chien == direct
        for rho in chien:
            assert poly_eval(f, coeffs, rho) == 0


def test_direct_handles_irreducible_quadratic():
    # x^2 + x + u with trace(u) = 1 has no roots; both methods agree on empty
    f = make_field(8)
    spec = make_bch(8, 2, 255)
    u = next(a for a in range(1, 256) if f.trace(a) == 1)
    locator = [1, 1, u]  # constant-term-1 form with the same root structure
    assert find_roots(spec, locator, method="direct") == set()
    assert find_roots(spec, locator, method="chien") == set()


def test_direct_repeated_root_quadratic():
    # sigma with sigma_1 = 0 has a double root; the distinct-root set is size 1
    f = make_field(5)
    spec = make_bch(5, 2, 31)
    a = f.alpha_pow(7)
    locator = [1, 0, f.sqr(f.inv(a))]  # (1 + x/a)^2
    assert find_roots(spec, locator, method="chien") == {a}
    assert find_roots(spec, locator, method="direct") == {a}
