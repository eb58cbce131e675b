"""Rebuild the running example F = {00, 1101, 111} and print everything about it.

    python scripts/reproduce_example.py [--out DIR]

With --out, the automaton, presentation and cover are also written as DOT.
"""

import argparse
from pathlib import Path

from cmrcover.checks import run_checks
from cmrcover.cmr import build_cmr_automaton, cmr_presentation, edge_counts, presentation_failure
from cmrcover.graph import serialize, strongly_connected_components
from cmrcover.minimize import shannon_cover
from cmrcover.oracle import irreducibility_witness
from cmrcover.words import Alphabet, validate_forbidden_set


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", help="directory for DOT files")
    args = ap.parse_args()

    f = validate_forbidden_set(["00", "1101", "111"], Alphabet(("0", "1")))
    d = build_cmr_automaton(f)
    gf = cmr_presentation(d)

    print(f)
    print(f"D_F: {len(d)} states, sinks {sorted(d.name(s) for s in d.sinks)}")
    for s in range(len(d)):
        if s in d.sinks:
            continue
        moves = ", ".join(f"{a}->{d.name(d.delta[s, a])}{'' if d.is_forward(s, a) else ' (back)'}"
                          for a in f.alphabet)
        nf, nb = edge_counts(d, s)
        fail = d.name(d.failure[s]) if s in d.failure else "-"
        print(f"  {d.name(s):>5}  f={fail:<3} N_f={nf} N_b={nb}  {moves}")
    comps = [sorted(gf.names[s] for s in c) for c in strongly_connected_components(gf)]
    print(f"G_F: {len(gf)} states, SCCs {comps}")

    r = shannon_cover(f)
    print(r.summary())
    n = len(gf)
    u, w = irreducibility_witness(f, n, n * n)
    print(f"no connector for u={f.alphabet.show(u)}, w={f.alphabet.show(w)}")
    failed = [c.line() for c in run_checks(f) if not c.ok]
    print("all predicates hold" if not failed else "\n".join(failed))

    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "automaton.dot").write_bytes(serialize(d.graph, "dot", d.failure))
        (out / "presentation.dot").write_bytes(serialize(gf, "dot", presentation_failure(d)))
        (out / "cover.dot").write_bytes(serialize(r.cover, "dot"))


if __name__ == "__main__":
    main()
