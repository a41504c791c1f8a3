"""
Test script for the rank certificates.

Tests:
- Pole-locus evaluation matrix, with a degenerate column control
- Generator images derived two ways
- Rank of the diagonal span, the N != 2 hypothesis and the N = 2 collapse
- Finite-field lower bound never exceeds the exact rank
- Scaling invariance and the full transported span
"""

from src.backend.rank_certificates import (
    rc_generator_images,
    rc_monotonicity,
    rc_polelemma,
    rc_rank_delta,
    rc_rank_full,
    rc_scaling_invariance,
)
from src.utils.error_handler import HypothesisError


def test_polelemma():
    """Test that the N^2 x 6 evaluation matrix has rank 6."""
    print("\n" + "=" * 60)
    print("Test 1: Pole-Locus Matrix")
    print("=" * 60)

    for N, A in [(5, 2), (5, 3), (7, 3), (8, 3), (11, 4)]:
        assert rc_polelemma(N, A) == 6, f"rank drop at ({N}, {A})"
    degenerate = [(0, 0), (0, 0), (0, 2), (1, 1), (3, 1), (1, 2)]
    assert rc_polelemma(5, 2, degenerate) == 5
    print("✅ Rank 6 on admissible pairs; a repeated column drops the rank")


def test_generator_images():
    """Test the direct and transported images, telescoping and the xi1 - xi0 difference."""
    print("\n" + "=" * 60)
    print("Test 2: Generator Images")
    print("=" * 60)

    for N, A in [(5, 2), (7, 4)]:
        result = rc_generator_images(N, A)
        assert result.routes_agree
        assert result.xi0_sum_vanishes
        assert result.difference_is_inhomogeneous
        assert len(result.all_images()) == 2 * N
        print(f"✅ ({N}, {A}): both derivations agree")


def test_rank_delta():
    """Test rank 6 of the diagonal span, the N = 2 refusal and the rank-3 collapse at N = 2."""
    print("\n" + "=" * 60)
    print("Test 3: Diagonal Span Rank")
    print("=" * 60)

    cert = rc_rank_delta(5, 2)
    assert cert.rank == 6
    assert cert.dim_Q == 24
    assert cert.to_dict()["generators_count"] == 6
    assert not cert.notes

    even = rc_rank_delta(8, 3)
    assert even.rank == 6
    assert even.notes, "even N should note the lower-bound field"

    try:
        rc_rank_delta(2, 1)
        assert False, "N = 2 should be refused"
    except HypothesisError as e:
        print(f"✅ Refused: {e}")

    collapsed = rc_rank_delta(2, 1, enforce_hypothesis=False)
    assert collapsed.rank == 3
    assert collapsed.dim_Q == 3
    print("✅ Without the hypothesis N = 2 collapses to rank 3")
    print(f"✅ rank {cert.rank}, dim_Q {cert.dim_Q}")


def test_fast_path():
    """Test that the F_p specialization is a lower bound."""
    print("\n" + "=" * 60)
    print("Test 4: Finite-Field Lower Bound")
    print("=" * 60)

    cert = rc_rank_delta(5, 2, fast_path=True, fast_points=12, seed=3)
    fast = cert.fast_path
    assert fast is not None
    assert fast["prime"] % 10 == 1
    assert fast["rank"] <= cert.rank
    print(f"✅ rank >= {fast['rank']} mod {fast['prime']}, exact {cert.rank}")


def test_scaling_and_full_span():
    """Test scaling invariance and rank 36 of the transported span."""
    print("\n" + "=" * 60)
    print("Test 5: Scaling and Full Span")
    print("=" * 60)

    for seed in (0, 1):
        assert rc_scaling_invariance(5, 2, seed)

    full = rc_rank_full(5, 2)
    delta = rc_rank_delta(5, 2)
    assert full.rank == 36
    monotone = rc_monotonicity(5, 2, full=full, delta=delta)
    assert monotone["passed"]
    assert monotone["base"] == 2
    print(f"✅ rank_full = {full.rank}, dim_Q = {full.dim_Q}")


if __name__ == "__main__":
    print("=" * 60)
    print("Rank Certificate Tests")
    print("=" * 60)

    try:
        test_polelemma()
        test_generator_images()
        test_rank_delta()
        test_fast_path()
        test_scaling_and_full_span()

        print("\n" + "=" * 60)
        print("✅ All Rank Certificate Tests Passed!")
        print("=" * 60)

    except Exception as e:
        print(f"\n❌ Test failed: {e}")
        import traceback
        traceback.print_exc()
        exit(1)
