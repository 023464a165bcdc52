"""Properness of polynomial maps of C^2 and intersection homology of simplicial models.

The algebraic half (``poly``, ``elim``, ``arcs``, ``asymptotic``) decides
whether a map is proper by computing its asymptotic set with exact Q(i)
arithmetic.  The topological half (``topology``, ``ih``, ``models``)
computes ordinary and intersection homology of filtered complexes and
checks, on a catalog of curated models, that non-properness, H_2 != 0 and
IH_2 != 0 go together.
"""

__version__ = "0.1.0"

from .gaussrat import GaussRat
from .poly import LojBound, Poly, PolyMap, jacobian_det, lojasiewicz_bound
from .parse import ParseError, parse_arc_literal, parse_map, parse_poly
from .elim import resultant
from .arcs import INF, DirectionSet, MonomialArc, arc_limit, asymptotic_directions, escape_cone_check
from .asymptotic import (AlgebraicSet, Component, Witness, certify_point, critical_values, is_proper,
                         jelonek_candidates, jelonek_set, uniruled_witness)
from .topology import (PMReport, SimplicialComplex, barycentric_subdivision, betti, boundary_matrix,
                       load_complex, validate_pseudomanifold)
from .ih import (Filtration, Perversity, allowable_simplices, duality_check, ic_complex, ih_betti,
                 independence_check, standard_perversities)
from .models import (CatalogEntry, EquivalenceReport, allowable_arc_cycle, catalog, even_strata_check,
                     verify_equivalence)
