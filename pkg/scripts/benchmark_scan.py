"""Time a scan of a synthetic corpus at several worker counts.

Also checks that every worker count writes byte-identical CSV.
"""
import argparse
import tempfile
import time
from pathlib import Path

from dappnet.pipeline import ScanConfig, records_to_csv, scan_sources
from dappnet.synthetic import generate_corpus


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--contracts", type=int, default=600)
    ap.add_argument("--workers", type=int, nargs="+", default=[1, 2, 4, 8])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp) / "corpus"
        generate_corpus(root, contracts=args.contracts, seed=args.seed)
        baseline = None
        print(f"{'workers':>8} {'best s':>8} {'records':>8}")
        for w in args.workers:
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                result = scan_sources(ScanConfig([root], workers=w))
                best = min(best, time.perf_counter() - t0)
            text = records_to_csv(result.records)
            baseline = baseline or text
            flag = "" if text == baseline else "  CSV differs!"
            print(f"{w:>8} {best:>8.3f} {len(result.records):>8}{flag}")


if __name__ == "__main__":
    main()
