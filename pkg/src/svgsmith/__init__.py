"""svgsmith: text-to-SVG generation and natural-language vector editing.

An LLM drafts a semantically structured template from geometric primitives;
a two-stage differentiable optimization (path-latent space, then control
points) fits the template to a detail-enhanced target image; an editing
loop applies natural-language instructions with selective re-optimization.
"""

__version__ = "0.1.0"
