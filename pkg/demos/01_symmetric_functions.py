"""Tour of the symmetric-function algebra: pinning, peers, and regularity.

Usage:
    python demos/01_symmetric_functions.py
"""

from fractions import Fraction

from holant import builtin, peer_partition, peering_closure_at, pin, regularity


def show(name, fn):
    print(f"{name}: {fn!r}")


def main():
    print("== Pinning is a sliding window on boolean-domain tables ==")
    eq = builtin("equality", 2, 3, weights=[1, 1])
    show("Equality of arity 3", eq)
    show("  pin one argument to 1", pin(eq, (0, 1)))
    show("  pin one argument to 0", pin(eq, (1, 0)))
    show("  pin two arguments to 1", pin(eq, (0, 2)))

    print()
    print("== Peers: assignments with the same pinning effect ==")
    amo = builtin("at_most_one", 2, 4)
    show("AtMostOne of arity 4", amo)
    part = peer_partition(amo, 2)
    for cls, rep, pinned in zip(part.classes, part.representatives, part.pinned):
        members = ", ".join(str(m) for m in sorted(cls.members))
        print(f"  class rep {rep}: members {{{members}}} pin to {pinned!r}")

    print()
    print("== Regularity: the worst-case number of pin outcomes ==")
    mu = Fraction(1, 3)
    for name, fn in [
        ("Equality arity 6", builtin("equality", 2, 6, weights=[1, 1])),
        ("AtMostOne arity 6", builtin("at_most_one", 2, 6)),
        ("ExactOne arity 6", builtin("exact_one", 2, 6)),
        ("subgraphs-world vertex [1,u,1,u,...] arity 7",
         builtin("cyclic", 2, 7, c=2, values=[1, mu])),
    ]:
        print(f"  {name}: C = {regularity(fn)}")

    print()
    print("== Peering closures: all unions of peer classes, at most 2^C ==")
    for k in range(5):
        closure = peering_closure_at(amo, k)
        print(f"  arity split k={k}: {len(closure)} boolean functions "
              f"(bound {2 ** regularity(amo)})")


if __name__ == "__main__":
    main()
