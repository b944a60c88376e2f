# Invariants Tuning Module
