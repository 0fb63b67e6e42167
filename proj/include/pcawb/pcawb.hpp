#ifndef PCAWB_PCAWB_HPP
#define PCAWB_PCAWB_HPP

// Everything at once.

#include "pcawb/outcome.hpp"
#include "pcawb/model.hpp"
#include "pcawb/term.hpp"
#include "pcawb/eval.hpp"
#include "pcawb/finite_pas.hpp"
#include "pcawb/concat.hpp"
#include "pcawb/toyk1.hpp"
#include "pcawb/sknf.hpp"
#include "pcawb/models.hpp"
#include "pcawb/numbering.hpp"
#include "pcawb/properties.hpp"
#include "pcawb/laws.hpp"
#include "pcawb/constructions.hpp"
#include "pcawb/demos.hpp"
#include "pcawb/fixpoint.hpp"
#include "pcawb/oracle.hpp"
#include "pcawb/enumeration.hpp"
#include "pcawb/report.hpp"

#endif  // PCAWB_PCAWB_HPP
