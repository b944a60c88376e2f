# Omega Component - Cayley Omega process, transvection recipes and cross-validation
