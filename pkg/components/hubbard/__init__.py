# Hubbard Component - cyclic three-site Ising-Hubbard ring, field sweeps and peak search
