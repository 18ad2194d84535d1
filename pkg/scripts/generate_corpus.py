"""Write a synthetic Solidity corpus for scans and benchmarks."""
import argparse
from pathlib import Path

from dappnet.synthetic import generate_corpus


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", type=Path)
    ap.add_argument("--contracts", type=int, default=600)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    files = generate_corpus(args.out, contracts=args.contracts, seed=args.seed)
    print(f"wrote {len(files)} files under {args.out}")


if __name__ == "__main__":
    main()
