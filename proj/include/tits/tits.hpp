#ifndef TITS_TITS_HPP
#define TITS_TITS_HPP

// Umbrella header for the library (everything except the CLI layer).

#include "tits/arith.hpp"
#include "tits/brauer_class.hpp"
#include "tits/classify.hpp"
#include "tits/csa.hpp"
#include "tits/errors.hpp"
#include "tits/field.hpp"
#include "tits/gaussian.hpp"
#include "tits/hilbert.hpp"
#include "tits/json_io.hpp"
#include "tits/measure.hpp"
#include "tits/qform.hpp"
#include "tits/qz.hpp"
#include "tits/rt_ring.hpp"
#include "tits/square_class.hpp"

#endif  // TITS_TITS_HPP
