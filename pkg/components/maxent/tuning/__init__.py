# Maxent Tuning Module
