"""The frozen ten-label order shared with the sinosent pipeline.

Declared here (rather than imported) so the service has no code dependency
on the pipeline package; the wire protocol is the only contract between
them. The order must never change.
"""

LABELS = (
    "optimistic",
    "thankful",
    "empathetic",
    "pessimistic",
    "anxious",
    "sad",
    "annoyed",
    "denial",
    "official_report",
    "joking",
)

NUM_LABELS = len(LABELS)
