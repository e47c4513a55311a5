"""
A certified small-eps inequality
================================

The projection bound needs a one-variable inequality on ``(0, 0.01]``.
Interval arithmetic splits the range into pieces and proves a strict sign on
each, which is more than a dense float grid can say.
"""

from udcp.bounds import ineq3_rhs, small_epsilon_envelope, verify_ineq3

for eps in (1e-8, 1e-6, 1e-4, 1e-2):
    print(f"R({eps:g}) = {ineq3_rhs(eps):+.6e}")

cert = verify_ineq3(mode="interval")
print(f"{len(cert.pieces)} pieces, all negative: {cert.all_negative}")
for piece in cert.pieces[:4]:
    print("  ", piece)

# Below the first piece a closed-form envelope takes over.
print(small_epsilon_envelope(1e-8))

# Flipping the sign of the lone eps term breaks the inequality near 0.00655.
flipped = verify_ineq3(mode="interval", sign=+1)
print("with +eps, all negative:", flipped.all_negative)
