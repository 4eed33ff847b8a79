# Handlers package for the amplifier synthesis CLI
