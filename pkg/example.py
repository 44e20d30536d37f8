"""
Example script walking through the engine on small cases.

This shows how to:
1. Bracket elements of W_mu and specialize mu to recover the Witt algebra
2. Straighten words in the enveloping algebra and check a differentiator identity
3. Act on a tensor module and find the annihilating differentiator order
4. Build an AW-module from jet data and read off D(s)
5. Compute a weight-space rank of the A-cover
"""

from awmod import aw_construct, extract_D, nilpotent_rep
from cover import weight_space_rank
from linalg import format_matrix
from modules import ModuleParams, min_annihilation_order
from scalars import specialize
from solalg import bracket, e
from uea import describe, pbw_normalize, verify_omega_identity


def main():
    print("=" * 80)
    print("Solenoidal Lie algebras - Simple Example")
    print("=" * 80)

    print("\n1. Brackets in W_mu (n = 1) and the Witt specialization mu_1 -> 1")
    x, y = e((2,)), e((-5,))
    z = bracket(x, y)
    print(f"   [e_2, e_-5] = {z}")
    witt = {k: specialize(c, {"m1": 1}) for k, c in z.terms.items()}
    print(f"   with mu_1 = 1: {', '.join(f'{c} e_{k[0]}' for k, c in witt.items())}   (Witt: (m - k) e_(m+k))")

    print("\n2. PBW straightening and the fourfold differentiator identity")
    u = pbw_normalize([(3,), (1,)])
    print(f"   E_3 E_1 = {describe(u)}")
    result = verify_omega_identity(2, (1,), (0,), (2,), (-1,), (1,))
    print(f"   r=2, k=1, s=0, p=2, q=-1, h=1: equal={result['equal']} "
          f"({result['lhs_terms']} / {result['rhs_terms']} PBW terms)")

    print("\n3. Annihilation order on T(alpha, beta)")
    params = ModuleParams.tensor(2)
    order = min_annihilation_order((1, 0), (0, 1), (2, -1), params)
    print(f"   {params.label()}: least annihilating order = {order}")

    print("\n4. The two-dimensional nilpotent AW-module")
    module = aw_construct(nilpotent_rep(1))
    for row in format_matrix(extract_D(module, (2,))):
        print(f"   D(2) row: {row}")

    print("\n5. A-cover weight-space ranks at weight offset 0")
    for label, m in (("T(a,b)", ModuleParams.tensor(1)), ("T(0,b)", ModuleParams.tensor(1, 0)),
                     ("trivial", ModuleParams.trivial(1))):
        print(f"   {label:<10} rank {weight_space_rank(m, (0,))['rank']}")
    print("=" * 80)


if __name__ == "__main__":
    main()
