"""Fermionic p-adic integrals and twisted Euler number families."""
