"""
Simulator Package
Superfície externa do clipfl-sim: configuração, logging, artefatos e CLI
"""
