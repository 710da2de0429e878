"""Walk through the renormalised value of the Chen cone <e1, e1+e2>.

Run with:  python demos/chen_two_cone.py
"""
from czv import chen_cone
from czv.coalgebra import ColouredLatticeCone, reduced_coproduct, render_tensor
from czv.germs import eval_zero, pi_plus
from czv.renormalise import exp_integral, exp_sum_open, mu_via_birkhoff

# %% The cone and its exponential sum
C = chen_cone(2)
print("cone:", C)
S = exp_sum_open(C, 3)
print("S°(C) =", S)

# %% Poles come from the generators; the integral carries the leading part
print("I(C)  =", exp_integral(C))

# %% Project away the polar part
mu = pi_plus(S)
print("π₊ S° =", mu)
print("value at 0:", eval_zero(mu))

# %% Same answer through the Birkhoff recursion on the cone coalgebra
x = ColouredLatticeCone(C)
print("reduced coproduct:")
print(render_tensor(reduced_coproduct(x)))
print("recursive factor agrees:", mu_via_birkhoff(C, N=3).equals(mu, 3))
