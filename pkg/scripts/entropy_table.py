"""Partition entropy log2(n+1) and the information added by each new observation."""
import argparse

from partition_stats.information import marginal_information, partition_entropy


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=20)
    args = ap.parse_args()
    print(f"{'n':>6}{'segments':>10}{'H bits':>10}{'gain bits':>11}")
    for n in range(args.max_n + 1):
        print(f"{n:>6}{n + 1:>10}{partition_entropy(n).value:>10.4f}{marginal_information(n):>11.4f}")


if __name__ == "__main__":
    main()
