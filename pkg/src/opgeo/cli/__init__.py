from .dsl import ScriptError, parse, print_script
from .interpreter import RunConfig, run
from .svg import render_svg

__all__ = ["ScriptError", "parse", "print_script", "RunConfig", "run", "render_svg"]
