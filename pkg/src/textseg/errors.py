"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Two rasters that must share a shape do not."""


class DomainError(ValueError):
    """A value falls outside its documented domain."""


class FontError(ValueError):
    """A font file cannot be parsed or offers no usable glyphs."""
