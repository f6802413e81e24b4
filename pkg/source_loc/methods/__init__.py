"""Source localization methods.

Prescribed methods (LPSI, NetSleuth, OJC) work from a single infected
snapshot; GCNSI is trained on simulated seed/diffusion pairs first.
"""

from .catalog import MethodCatalog, MethodParameter, MethodType
from .gcnsi import GcnHyper, GcnModel, load_model, predict_gcnsi, save_model, train_gcnsi
from .lpsi import LpsiConfig, lpsi, lpsi_scores
from .netsleuth import MdlReport, netsleuth
from .ojc import ojc
from .prediction import Prediction

__all__ = [
    'GcnHyper',
    'GcnModel',
    'LpsiConfig',
    'MdlReport',
    'MethodCatalog',
    'MethodParameter',
    'MethodType',
    'Prediction',
    'load_model',
    'lpsi',
    'lpsi_scores',
    'netsleuth',
    'ojc',
    'predict_gcnsi',
    'save_model',
    'train_gcnsi'
]
