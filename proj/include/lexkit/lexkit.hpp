#pragma once

// Umbrella header: flat feature structures, the data-category registry, the
// positional MSD tag codec, the LMF core model, the three lexicon dialects
// and the cross-format converters.

#include "convert.hpp"
#include "dialects.hpp"
#include "errors.hpp"
#include "feature.hpp"
#include "io.hpp"
#include "lmf.hpp"
#include "msd.hpp"
#include "records.hpp"
#include "registry.hpp"
#include "unicode.hpp"
#include "xml.hpp"
