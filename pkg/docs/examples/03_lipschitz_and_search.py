# %% [markdown]
# # Lipschitz notions and random search

# %%
from itertools import islice

from pmhyper import classify
from pmhyper.fixtures import real_line_norm_sample, swap_space
from pmhyper.lipschitz import LipschitzNotion, constant_map, constant_map_report, minimal_L
from pmhyper.search import Family, GeneratorConfig, MinePredicate, audit, mine, stream

# %% [markdown]
# A swap of two equal-size points is an isometry with no fixed point.

# %%
s = swap_space()
for nt in LipschitzNotion:
    print(nt.value, minimal_L(s, {"a": "b", "b": "a"}, nt))

# %% [markdown]
# A constant map has no Matthews constant at all once the target has
# positive size, yet it is L1 Lipschitz for every positive L.

# %%
line = real_line_norm_sample()
f = constant_map(line, "1")
print(minimal_L(line, f, LipschitzNotion.MATTHEWS))
print(minimal_L(line, f, LipschitzNotion.L1))
print(constant_map_report(line, "0").in_bottom_set, constant_map_report(line, "1").in_bottom_set)

# %% [markdown]
# Mining for separating examples, then auditing a corpus.

# %%
cfg = GeneratorConfig(n=3, seed=2024, family=Family.REJECTION)
for pred in (MinePredicate.NODAL_NOT_AP, MinePredicate.AP_NOT_NODAL):
    res = mine(cfg, pred, 10**6)
    print(pred.value, res.instance, res.space.matrix)

# %%
records = [classify(x) for x in islice(stream(GeneratorConfig(n=4, seed=5)), 500)]
print(audit(records).to_dict())
