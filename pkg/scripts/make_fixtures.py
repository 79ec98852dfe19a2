"""Regenerate the synthetic rating fixtures under tests/data.

    python3 scripts/make_fixtures.py [--out tests/data]
"""
import argparse
from pathlib import Path

from bbcluster.synthetic import trust_network


def write_ratings(path, net, header):
    lines = [f"# {header}"]
    for a, b, r in net.edges:
        lines.append(f"{net.names[a]}\t{net.names[b]}\t{r:g}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=Path(__file__).resolve().parent.parent / "tests" / "data")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    # same node and edge count as the small network in the study's table
    net = trust_network(62, 105, seed=2012)
    write_ratings(out / "trust62.tsv", net, "synthetic directed trust ratings: 62 users, 105 rated pairs")
    (out / "three_ratings.tsv").write_text("alice\tbob\t4\nbob\talice\t8\nbob\tcarol\t2\n", encoding="utf-8")
    print(f"wrote fixtures to {out}")


if __name__ == "__main__":
    main()
