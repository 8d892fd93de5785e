# %% [markdown]
# # Building spaces that pass both tests
#
# Adding one far-away heavy point always yields a nodally hyperconvex space,
# and it keeps AP hyperconvexity.  Norms give another source of examples.

# %%
from fractions import Fraction

from pmhyper import classify
from pmhyper.constructions import NormKind, chain, extend, norm_pmetric, tripod_dm_gap
from pmhyper.search import GeneratorConfig, generate

# %%
s = generate(GeneratorConfig(n=3, seed=11, denominator=2))
print(s.matrix)
w = extend(s)
print("new row:", w.matrix[-1])
print("before:", classify(s).flags()["nodal"], " after:", classify(w).flags()["nodal"])

# %%
for n in range(1, 6):
    rec = classify(chain(n))
    print(n, rec.ap.holds, rec.nodal.holds)

# %% [markdown]
# ## Norm partial metrics
# p(x, y) = (|x - y| + |x| + |y|) / 2.  The origin has size 0 and sits in
# every admissible AP ball family.

# %%
pts = [[0, 0], [1, 0], [0, 1], [1, 1], [-1, Fraction(1, 2)]]
v = norm_pmetric(pts, NormKind.LINF)
print(v.points)
print(classify(v).flags())

# %% [markdown]
# ## The l1 tripod
# Radius 1/2 around the three unit vectors leaves no common point of the
# d_m balls; radius 1 does.

# %%
print(tripod_dm_gap(Fraction(1, 2)))
print(tripod_dm_gap(1))
