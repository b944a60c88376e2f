# Maxent Component - maximally entangled example states and the cyclic construction
