"""Unit test package for qbg_mobius."""
