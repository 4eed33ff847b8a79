# Quantum amplifier synthesis package
