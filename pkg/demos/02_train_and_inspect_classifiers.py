"""Train all six classifiers on the bundled synthetic corpus and poke at them.

Run: python demos/02_train_and_inspect_classifiers.py
"""

from vulnchar.classifiers import KINDS, algorithm_spec
from vulnchar.pipeline import train_text_model
from vulnchar.synthetic import load_bundled_corpus

corpus = load_bundled_corpus()
print(f"corpus: {len(corpus)} descriptions across {len(corpus.class_counts)} classes")
print()

probe = "a remote attacker escalates privilege to root on the affected host"
models = {}
for kind in KINDS:
    text_model = train_text_model(algorithm_spec(kind), corpus)
    models[kind] = text_model
    prediction = text_model.predict_text(probe)
    print(f"{kind:15s} -> {prediction.label.name}")
print()

# The models carry inspectable state.
svm = models["svm"].model
print(f"svm: {len(svm.machines)} pairwise machines for {len(svm.class_list)} classes")
first = svm.machines[0]
print(
    f"  machine 0 separates {svm.class_list[first.neg].name} from "
    f"{svm.class_list[first.pos].name}; bias {first.bias:.4f}"
)

tree = models["decision_tree"].model
print(f"decision tree: {tree.root.leaves()} leaves, depth {tree.root.depth()}")

forest = models["random_forest"].model
print(f"random forest: {len(forest.trees)} trees")

boost = models["adaboost_svm"].model
print(f"adaboost: {len(boost.members)} member(s), weights {['%.2f' % b for b in boost.betas]}")
print("  (a perfect first round stops boosting immediately on separable data)")

vote = models["majority_vote"].model
tokens = models["majority_vote"].predict_text(probe)
print(f"majority vote members: {', '.join(vote.member_kinds)}")
print(f"probe tokens: {tokens.tokens}")
