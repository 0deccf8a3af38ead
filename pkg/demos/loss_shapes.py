#
# The two losses side by side, and where abstaining is the right call.
#
# The reject loss charges 1 for a confident mistake, d for withholding, and
# nothing otherwise.  Its convex surrogate is a hinge with a steeper slope
# a = (1-d)/d on the negative side, so confident mistakes hurt more than
# hesitation.  The surrogate sits above the loss everywhere, which is what
# makes minimizing it meaningful.
#
import numpy as np

from rejectsvm import CostParams, bayes_rule, gen_hinge, reject_loss

if __name__ == "__main__":
    cp = CostParams(d=0.25)
    print(f"d={cp.d}  tau={cp.tau}  negative-side slope a={cp.a}")
    print()
    print("   z     reject-loss   surrogate")
    for z in (-2.0, -1.0, -0.51, -0.5, 0.0, 0.5, 0.51, 1.0, 2.0):
        ell = reject_loss(np.array([z]), cp)[0]
        phi = gen_hinge(np.array([z]), cp)[0]
        print(f"{z:6.2f}   {ell:9.2f}   {phi:9.2f}")

    print()
    print("pointwise-optimal decision as the class probability moves:")
    eta = np.linspace(0.0, 1.0, 21)
    for d in (0.1, 0.25, 0.45):
        dec = bayes_rule(eta, CostParams(d=d))
        band = "".join({-1.0: "-", 0.0: "?", 1.0: "+"}[v] for v in dec)
        print(f"  d={d:4.2f}  eta 0 -> 1:  {band}")
    print()
    print("smaller d widens the abstention band '?': when withholding is")
    print("cheap, the rule only commits on near-certain points.")
