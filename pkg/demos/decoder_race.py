"""Race the full decoders with and without the lazy front end.

All decoders see the bit-identical syndrome stream (toric code, perfect
measurements).  At low error rates most syndromes are empty or trivially
local, so the lazy stage absorbs nearly every instance and the expensive
matching machinery runs only on the rare leftovers.
"""

from lazyqec import DecoderKind, benchmark_runtime


def main():
    trials = 20000
    stats = benchmark_runtime(
        [DecoderKind.MWPM, DecoderKind.LAZY_MWPM,
         DecoderKind.UNION_FIND, DecoderKind.LAZY_UNION_FIND],
        p=1e-3, d=20, trials=trials, seed=0,
    )
    print(f"toric d=20, p=1e-3, {trials} identical instances per decoder\n")
    print(f"{'decoder':>10} {'mean':>10} {'p99':>10} {'fallback':>9}")
    for kind, row in stats.items():
        print(
            f"{kind.value:>10} {row['mean'] * 1e6:>8.2f}us "
            f"{row['p99'] * 1e6:>8.2f}us {row['fallback_fraction']:>8.2%}"
        )
    for full, combo in (
        (DecoderKind.MWPM, DecoderKind.LAZY_MWPM),
        (DecoderKind.UNION_FIND, DecoderKind.LAZY_UNION_FIND),
    ):
        speedup = stats[full]["mean"] / stats[combo]["mean"]
        print(f"\nlazy front end speeds up {full.value} by {speedup:.1f}x")


if __name__ == "__main__":
    main()
