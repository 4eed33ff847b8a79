# Utils package for the amplifier synthesis CLI
