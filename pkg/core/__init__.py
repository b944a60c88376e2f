# Core - Fock space, SLOCC group, configuration and errors
