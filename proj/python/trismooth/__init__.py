"""Smart Laplacian smoothing of planar triangular meshes."""

try:
    from . import _trismooth as _core
except ImportError:  # running from the build tree, where the module is top-level
    import _trismooth as _core

Mesh = _core.Mesh
build_mesh = _core.build_mesh
convert_layout = _core.convert_layout
generate_delaunay = _core.generate_delaunay
generate_grid = _core.generate_grid
quality_summary = _core.quality_summary
read_mesh = _core.read_mesh
smooth = _core.smooth
triangle_alpha = _core.triangle_alpha
write_mesh = _core.write_mesh

__all__ = [
    "Mesh",
    "build_mesh",
    "convert_layout",
    "generate_delaunay",
    "generate_grid",
    "quality_summary",
    "read_mesh",
    "smooth",
    "triangle_alpha",
    "write_mesh",
]
