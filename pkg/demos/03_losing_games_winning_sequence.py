"""Decoherence as an ally.

The paradox these games are built around: alternating between losing
games can produce a winning sequence. The quantum twist explored here is
what noise does to that effect.

Take the sequence AAB with a mildly biased calibration (epsilon = 1/168)
and the phase set delta = pi/5, beta = (pi/2, pi/2, pi/4, pi/3). Fully
coherent, the player loses. Turn up amplitude damping and the payoff
climbs monotonically, crossing into winning territory near p = 0.53:
relaxation toward |0> nudges the history pair toward the double-loss
block of coin B, which pays far better (win probability 0.7 - eps) than
the mixed-history blocks (0.25 - eps).

Depolarizing and phase damping push the same direction but weaker, and
at full strength the depolarized register pays exactly zero: the state
is maximally mixed before the coins even spin.
"""
import math

from parrondoq.coins import calibrate_classical
from parrondoq.engine import play
from parrondoq.noise import NoiseSpec

PI = math.pi
cfg = calibrate_classical(1 / 168, delta=PI / 5,
                          betas=(PI / 2, PI / 2, PI / 4, PI / 3))

print("== Payoff of AAB vs decoherence strength ==")
print(f"{'p':>6} {'ad':>12} {'dp':>12} {'pd':>12}")
for i in range(11):
    p = i / 10
    row = [play("AAB", cfg, NoiseSpec(kind, p)).payoff
           for kind in ("ad", "dp", "pd")]
    print(f"{p:>6.2f} " + " ".join(f"{v:+12.6f}" for v in row))

print()
print("== Where amplitude damping turns the game winning ==")
lo, hi = 0.5, 0.6
for _ in range(40):
    mid = 0.5 * (lo + hi)
    if play("AAB", cfg, NoiseSpec("ad", mid)).payoff < 0:
        lo = mid
    else:
        hi = mid
print(f"sign change at p = {0.5 * (lo + hi):.6f}")

print()
print("== Longer runs of the same block ==")
for seq in ("AAB", "(AAB)^2", "(AAB)^3"):
    coherent = play(seq, cfg, NoiseSpec("none", 0.0)).payoff
    damped = play(seq, cfg, NoiseSpec("ad", 0.8)).payoff
    print(f"{seq:>8}: coherent {coherent:+.6f}   ad(0.8) {damped:+.6f}")
