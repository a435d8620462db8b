"""Mirror maps of the four order-three operators and the level-one j expansion."""
import sys

from modpde import mirror


def main(order=12):
    for label, case in mirror.CASES.items():
        basis, x = mirror.mirror_data(label, order)
        terms = [f"{x[k]} q^{k}" for k in range(1, 5)]
        print(f"case {label}: {case.table_operator}")
        print(f"  lambda = {case.lam}, nu = {case.nu}")
        print("  f0 = " + " + ".join(f"{basis.f0[k]} x^{k}" for k in range(4)) + " + ...")
        print("  x(q) = " + " + ".join(terms) + " + ...")
        rep = mirror.modular_relation_check(label, order)
        print(f"  relation to order {order}: {'PASS' if rep.ok else 'FAIL'}")
    _, x = mirror.mirror_data("I", order)
    inv = 1 / x
    print("1/x_I(q) = " + " + ".join(f"{inv[e]} q^{e}" for e in range(-1, 3)) + " + ...")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 12)
