import numpy as np
import pytest

from rmsig import decoder, gf2, modcode, rmcode

from reference import coset_leader_weights, enumerate_codewords, int_to_bits


def all_syndromes(code):
    for s_int in range(1 << (code.n - code.k)):
        yield s_int, int_to_bits(s_int, code.n - code.k)


class TestDecodeClosest:
    def test_all_plus_one_gives_zero(self):
        for m, r in [(3, 1), (4, 2), (5, 3)]:
            c = decoder.decode_closest(m, r, np.ones(1 << m, dtype=np.int8))
            assert not c.any()

    @pytest.mark.parametrize("m,r", [(3, 1), (4, 2), (5, 2), (5, 3)])
    def test_zero_distance_round_trip(self, m, r):
        code = rmcode.build(m, r)
        rng = np.random.default_rng(m * 10 + r)
        for _ in range(20):
            msg = rng.integers(0, 2, size=code.k, dtype=np.uint8)
            word_sys = gf2.mat_vec(code.G.T, msg)
            word_eval = code.to_eval_order(word_sys)
            got = decoder.decode_closest(m, r, decoder.to_soft(word_eval))
            assert np.array_equal(got, word_eval)

    def test_rm31_all_hard_inputs_are_ml(self, rm31):
        # Brute force: distance to the nearest of the 16 codewords.
        eval_words = [rm31.to_eval_order(c) for c in enumerate_codewords(rm31.G)]
        for v_int in range(256):
            v = int_to_bits(v_int, 8)
            got = decoder.decode_closest(3, 1, decoder.to_soft(v))
            best = min(int((v ^ c).sum()) for c in eval_words)
            assert int((v ^ got).sum()) == best

    @pytest.mark.parametrize("m,r", [(3, 1), (4, 1), (4, 2), (5, 2), (4, 4), (3, 0)])
    def test_always_returns_codeword(self, m, r):
        code = rmcode.build(m, r)
        rng = np.random.default_rng(17)
        for _ in range(25):
            soft = rng.integers(-1, 2, size=1 << m).astype(np.int8)
            word = decoder.decode_closest(m, r, soft)
            assert not gf2.mat_vec(code.H, code.to_sys_order(word)).any()

    def test_all_erased_gives_codeword(self):
        for m, r in [(3, 1), (5, 2), (4, 4), (3, 0)]:
            code = rmcode.build(m, r)
            word = decoder.decode_closest(m, r, np.zeros(1 << m, dtype=np.int8))
            assert not gf2.mat_vec(code.H, code.to_sys_order(word)).any()

    def test_majority_base_case(self):
        soft = np.array([-1, -1, -1, 1, 0, 0, 0, 0], dtype=np.int8)
        assert decoder.decode_closest(3, 0, soft).all()
        # Exact tie goes to the zero codeword.
        tie = np.array([-1, -1, 1, 1, 0, 0, 0, 0], dtype=np.int8)
        assert not decoder.decode_closest(3, 0, tie).any()

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            decoder.decode_closest(3, 1, np.ones(7, dtype=np.int8))

    def test_deterministic(self):
        rng = np.random.default_rng(3)
        soft = rng.integers(-1, 2, size=32).astype(np.int8)
        a = decoder.decode_closest(5, 2, soft)
        b = decoder.decode_closest(5, 2, soft.copy())
        assert np.array_equal(a, b)


class TestSyndromeToCosetLeader:
    def test_zero_syndrome(self, rm31):
        e = decoder.syndrome_to_coset_leader(rm31, np.zeros(4, dtype=np.uint8))
        assert not e.any()

    @pytest.mark.parametrize("m", [3, 4])
    def test_matches_standard_array(self, m):
        code = rmcode.build(m, 1)
        oracle = coset_leader_weights(code.H)
        shifts = 1 << np.arange(code.n - code.k, dtype=np.int64)
        for s_int, s in all_syndromes(code):
            e = decoder.syndrome_to_coset_leader(code, s)
            assert np.array_equal(gf2.mat_vec(code.H, e), s)
            assert int(e.sum()) == oracle[s_int]

    @pytest.mark.parametrize("m,r", [(4, 2), (5, 2)])
    def test_syndrome_identity_random(self, m, r):
        code = rmcode.build(m, r)
        rng = np.random.default_rng(23)
        for _ in range(50):
            s = rng.integers(0, 2, size=code.n - code.k, dtype=np.uint8)
            e = decoder.syndrome_to_coset_leader(code, s)
            assert np.array_equal(gf2.mat_vec(code.H, e), s)

    def test_never_below_exhaustive_minimum(self):
        code = rmcode.build(4, 2)
        oracle = coset_leader_weights(code.H)
        for s_int, s in all_syndromes(code):
            e = decoder.syndrome_to_coset_leader(code, s)
            assert int(e.sum()) >= oracle[s_int]

    def test_length_check(self, rm31):
        with pytest.raises(ValueError):
            decoder.syndrome_to_coset_leader(rm31, np.zeros(5, dtype=np.uint8))


def modified_rm41_with_p4():
    code = rmcode.build(4, 1)
    for seed in range(100):
        rng = np.random.default_rng(seed)
        plan = modcode.puncture_plan(code, rng)
        if plan.p == 4:
            aligned, deleted = modcode.align_information_set(code, plan.deleted)
            return modcode.build_modified(aligned, deleted, rng)
    raise AssertionError("no seed produced p=4")


class TestPuncturedSyndromeDecode:
    def test_zero_syndrome(self):
        mod = modified_rm41_with_p4()
        top = mod.n - mod.k - mod.p
        e = decoder.punctured_syndrome_decode(mod, np.zeros(top, dtype=np.uint8))
        assert not e.any()

    def test_degenerate_no_puncture_matches_plain(self, rm41):
        mod = modcode.build_modified(rm41, [], np.random.default_rng(0))
        rng = np.random.default_rng(31)
        for _ in range(30):
            s = rng.integers(0, 2, size=rm41.n - rm41.k, dtype=np.uint8)
            assert np.array_equal(
                decoder.punctured_syndrome_decode(mod, s),
                decoder.syndrome_to_coset_leader(rm41, s),
            )

    def test_all_syndromes_satisfy_check(self):
        mod = modified_rm41_with_p4()
        top = mod.n - mod.k - mod.p
        assert top == 7
        h_p = mod.H_top
        for s_int in range(1 << top):
            s = int_to_bits(s_int, top)
            e = decoder.punctured_syndrome_decode(mod, s)
            assert e.shape == (mod.n - mod.p,)
            assert np.array_equal(gf2.mat_vec(h_p, e), s)

    def test_length_check(self):
        mod = modified_rm41_with_p4()
        with pytest.raises(ValueError):
            decoder.punctured_syndrome_decode(mod, np.zeros(3, dtype=np.uint8))


def test_soft_hard_round_trip():
    rng = np.random.default_rng(5)
    bits = rng.integers(0, 2, size=64, dtype=np.uint8)
    assert np.array_equal(decoder.to_hard(decoder.to_soft(bits)), bits)


@pytest.mark.parametrize("m,r", [(4, 1), (5, 2), (6, 3)])
def test_batch_equals_scalar(m, r):
    code = rmcode.build(m, r)
    rng = np.random.default_rng(41)
    synd = rng.integers(0, 2, size=(24, code.n - code.k), dtype=np.uint8)
    batch = decoder.coset_leaders(code, synd)
    for row in range(synd.shape[0]):
        assert np.array_equal(batch[row], decoder.syndrome_to_coset_leader(code, synd[row]))


def test_punctured_batch_equals_scalar():
    mod = modified_rm41_with_p4()
    rng = np.random.default_rng(43)
    top = mod.n - mod.k - mod.p
    synd = rng.integers(0, 2, size=(16, top), dtype=np.uint8)
    batch = decoder.punctured_coset_leaders(mod, synd)
    for row in range(synd.shape[0]):
        assert np.array_equal(batch[row], decoder.punctured_syndrome_decode(mod, synd[row]))
