# %% [markdown]
# # Two ways to ask for a common point
#
# A ball family in a partial metric space can be met "from the center side"
# (AP) or "from the witness side" (nodal).  This walk-through builds three
# tiny spaces and shows that neither notion implies the other.

# %%
from pmhyper import classify, validate_pmetric
from pmhyper.hyperconvexity import ap_witnesses, nodal_witnesses

# %%
two = validate_pmetric(["a", "b"], [[2, 2], [2, 0]])
fam = {"a": 1, "b": 1}
print("AP witnesses:   ", ap_witnesses(two, fam))
print("nodal witnesses:", nodal_witnesses(two, fam))
# Same family, different witnesses; both notions still hold on this space.
print(classify(two).flags())

# %% [markdown]
# ## Nodal but not AP

# %%
s = validate_pmetric(["a", "b", "c"], [[3, 3, 3], [3, 0, 2], [3, 2, 0]])
rec = classify(s)
print(rec.ap.holds, rec.nodal.holds)
print("violating family:", rec.ap.family.to_dict())

# %% [markdown]
# ## AP but not nodal

# %%
t = validate_pmetric(["a", "b", "c"], [[10, 15, 30], [15, 0, 15], [30, 15, 10]])
rec = classify(t)
print(rec.ap.holds, rec.nodal.holds)
print("nodal certificate:", rec.nodal.family.to_dict())
print("witnesses of {a:19, b:10, c:11}:", nodal_witnesses(t, {"a": 19, "b": 10, "c": 11}))
