#pragma once

// Convenience umbrella for the whole library.

#include "rational.hpp"
#include "cyclotomic.hpp"
#include "characters.hpp"
#include "series.hpp"
#include "euler.hpp"
#include "fermionic.hpp"
#include "identities.hpp"
#include "battery.hpp"
#include "io.hpp"
