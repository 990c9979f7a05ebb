#pragma once

// Self-similar trees as DFAs over rooted directed multigraphs: coverings,
// geometric minimization, and the portrait calculus for Aut(T).

#include "conetype/bigint.hpp"
#include "conetype/dfa.hpp"
#include "conetype/error.hpp"
#include "conetype/general_portrait.hpp"
#include "conetype/json_io.hpp"
#include "conetype/language_action.hpp"
#include "conetype/minimal_dfa.hpp"
#include "conetype/minimize.hpp"
#include "conetype/morphism.hpp"
#include "conetype/multigraph.hpp"
#include "conetype/perm.hpp"
#include "conetype/portrait.hpp"
#include "conetype/word.hpp"
