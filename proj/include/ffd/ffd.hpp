#ifndef FFD_FFD_HPP
#define FFD_FFD_HPP

#include "bench.hpp"
#include "bounds.hpp"
#include "canonical.hpp"
#include "catalog.hpp"
#include "column.hpp"
#include "design.hpp"
#include "enumerate.hpp"
#include "errors.hpp"
#include "extension.hpp"
#include "graph.hpp"
#include "isomap.hpp"
#include "isomorphism.hpp"
#include "parallel.hpp"
#include "query.hpp"
#include "run_matrix.hpp"
#include "search_table.hpp"
#include "wlp.hpp"

#endif // FFD_FFD_HPP
