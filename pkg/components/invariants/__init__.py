# Invariants Component - polynomial SLOCC invariants, measures and subsystem entropy
