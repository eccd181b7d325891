#ifndef KCHEEGER_KCHEEGER_HPP
#define KCHEEGER_KCHEEGER_HPP

#include "kcheeger/errors.hpp"
#include "kcheeger/graph.hpp"
#include "kcheeger/generators.hpp"
#include "kcheeger/edge_list_io.hpp"
#include "kcheeger/laplacian.hpp"
#include "kcheeger/jacobi.hpp"
#include "kcheeger/spectrum.hpp"
#include "kcheeger/cheeger.hpp"
#include "kcheeger/rounding.hpp"
#include "kcheeger/oracle.hpp"
#include "kcheeger/verify.hpp"

namespace kcheeger {
inline constexpr const char* kVersion = "0.1.0";
} // namespace kcheeger

#endif // KCHEEGER_KCHEEGER_HPP
