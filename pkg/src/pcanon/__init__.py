"""p-canonical bases, singular Soergel weights and Fock space crystals."""

__version__ = "0.1.0"
