"""Hom-Lie superalgebras over fields of characteristic 2."""
