#pragma once

#include "box.hpp"
#include "counts.hpp"
#include "errors.hpp"
#include "extractor.hpp"
#include "frame.hpp"
#include "functional.hpp"
#include "gadget.hpp"
#include "io.hpp"
#include "lp.hpp"
#include "polytope.hpp"
#include "protocol.hpp"
#include "quantum.hpp"
#include "rng.hpp"
#include "scenario.hpp"
