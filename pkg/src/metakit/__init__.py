"""Covers of split reductive groups over F_q((t)): dual data, cocycles, Hecke algebras."""
