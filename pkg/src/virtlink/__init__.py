"""Virtual link diagrams: planarity of Gauss paragraphs, Gauss-code
invariants, and Wirtinger presentations."""

from .carter import CarterComplex, build_carter, carter_genus, genus, is_planar_carter
from .codec import CodecError, SourceText, parse, parse_code, parse_paragraph, parse_presentation, serialize
from .diagram import (
    Arrow, GaussDiagram, GaussParagraph, Letter, components, diagram_to_paragraph,
    is_splittable, paragraph_to_diagram, split_components,
)
from .gausscode import (
    GaussCode, Symbol, all_associated_codes, alpha, beta, invariant_table, is_planar_code,
    is_planar_criterion, paragraph_to_code,
)
from .grouptools import FiniteGroupTable, count_homomorphisms, symmetric_group
from .wirtinger import (
    NotRealizable, Relator, WirtingerPresentation, abelianization_rank, build_graph,
    group_of_diagram, is_realizable, realize, to_cyclic_form, to_simple_form,
)

__version__ = "0.1.0"
