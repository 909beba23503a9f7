from longtail.reweigh.losses import PROB_EPSILON, bce, weighted_bce
from longtail.reweigh.weights import class_weights, write_weights

__all__ = ["PROB_EPSILON", "bce", "class_weights", "weighted_bce", "write_weights"]
