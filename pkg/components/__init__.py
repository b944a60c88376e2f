# Components - invariants, Omega process, maximally entangled states, Hubbard experiment
