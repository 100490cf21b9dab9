"""Clustering and cascaded labelling tools for hybrid (concatenative and
templatic) morphology."""
from importlib import resources

from morphkit.affixes import (AffixCandidate, AffixInventory, AffixParams, Segmentation,
                              Trie, build_inventory, build_trie, cv_pattern,
                              detect_gemination, score_affixes, segment,
                              transitional_probability)
from morphkit.cascade import (DEFAULT_ORDER, Cascade, MorphLabel, SequenceSearchParams,
                              classify, load_cascade, save_cascade, search_best_order,
                              train_cascade)
from morphkit.classify import (DecisionTree, FeatureVector, TrainParams, extract_features,
                               information_gain, predict, train)
from morphkit.cluster_stats import (AnalysisReport, BinnedTable, analyze, pearson,
                                    quality_distribution, quality_removal_correlation,
                                    removal_distribution, size_distribution)
from morphkit.clustering import (Cluster, ClusterSet, ContextVectors, SimilarityParams,
                                 build_context_vectors, initial_clusters, merge_clusters,
                                 orthographic_similarity, semantic_similarity)
from morphkit.evaluation import EvalReport, evaluate, evaluate_split, export_report
from morphkit.lexicon import (ClusterEvalRecord, DatasetSplit, LabelledEntry, WordEntry,
                              load_cluster_evals, load_corpus, load_labelled_lexicon,
                              split_dataset)

__version__ = "0.1.0"


def data_path(name):
    """Path to a bundled fixture file (``paradigm_verbs.tsv``, ``verbs_fixture.tsv`` ...)."""
    return resources.files("morphkit") / "data" / name
