"""
besmints - base-extension semantics for intuitionistic propositional logic via clausal translation
"""

__version__ = "0.1.0"
