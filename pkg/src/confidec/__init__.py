"""confidec: decision tables over encrypted records inside attested units."""

__version__ = "0.1.0"

# Tag mixed into code measurements so that evaluator upgrades change the
# measured identity of a deployed unit.
ENGINE_TAG = f"confidec-engine/{__version__}"
