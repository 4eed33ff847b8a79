# Tests package for the amplifier synthesis CLI
