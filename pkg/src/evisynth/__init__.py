"""evisynth: an engine for automating systematic literature reviews.

Subpackages map onto the pipeline stages: bibliographic retrieval
(``biblio``), LLM access (``llm``), article screening (``screening``),
PDF-to-markdown conversion (``convert``), structured data extraction
(``extraction``), ground-truth evaluation (``evaluation``), report
generation (``report``), the human review service (``review``), and the
orchestrating CLI (``pipeline``).
"""

__version__ = "0.1.0"
