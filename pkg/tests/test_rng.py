from cospankit.rng import Lcg


def test_sequence_from_zero():
    r = Lcg(0)
    assert r.next_u64() == 1442695040888963407
    assert r.next_u64() == (1442695040888963407 * 6364136223846793005 + 1442695040888963407) % 2**64


def test_same_seed_same_stream():
    a, b = Lcg(7), Lcg(7)
    assert [a.below(10) for _ in range(50)] == [b.below(10) for _ in range(50)]


def test_below_uses_high_bits():
    r, s = Lcg(3), Lcg(3)
    assert r.below(1000) == (s.next_u64() >> 32) % 1000


def test_random_sets_and_functions_are_well_formed():
    r = Lcg(11)
    for _ in range(30):
        A = r.finset(3, "a")
        B = r.finset(3, "b", min_size=1)
        f = r.function(A, B)
        assert f.dom == A and f.cod == B
