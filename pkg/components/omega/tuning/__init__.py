# Omega Tuning Module
