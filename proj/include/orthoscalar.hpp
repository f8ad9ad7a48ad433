#pragma once

#include "orthoscalar/numerics.hpp"
#include "orthoscalar/weights.hpp"
#include "orthoscalar/systems.hpp"
#include "orthoscalar/roots.hpp"
#include "orthoscalar/certificate.hpp"
#include "orthoscalar/coxeter.hpp"
#include "orthoscalar/admissibility.hpp"
#include "orthoscalar/knr.hpp"
#include "orthoscalar/unitarize.hpp"
#include "orthoscalar/io.hpp"
