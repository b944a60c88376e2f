# Hubbard Tuning Module
