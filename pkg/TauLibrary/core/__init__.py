# -*- coding: utf-8 -*-
"""Exact computations behind the tau library: arithmetic, lattices, loop groups and the Fock space."""
