"""mwplab: generation and quality control for K-8 math word problems.

The package covers the full pipeline: prompting a completion backend for
question/solution pairs, executing the generated solution functions in a
restricted interpreter, scoring readability and corpus-level metrics,
running an annotation/adjudication workflow, and producing the study
tables, regressions, and dataset exports built on top of those labels.
"""

__version__ = "0.1.0"
