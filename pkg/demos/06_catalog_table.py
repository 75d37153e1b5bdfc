"""
Invariant table for the built-in catalog
========================================

Same output as ``lieder catalog table --max-order 3``.
"""

import sys

from lieder.catalog import invariant_table, standard_catalog, table_csv

rows = invariant_table(standard_catalog(), 3)
sys.stdout.write(table_csv(rows))
