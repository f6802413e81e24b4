"""
source-loc - graph source localization toolkit.
Simulates IC/LT cascades on benchmark graphs and locates their sources with
LPSI, NetSleuth, OJC and GCNSI, reporting accuracy, precision, recall, F-score and AUC.
"""

__version__ = "0.1.0"
__author__ = "source-loc developers"
