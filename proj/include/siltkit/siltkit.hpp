#pragma once

#include "siltkit/corealg/resolution.hpp"
#include "siltkit/homotopy/mutation.hpp"
#include "siltkit/dg/dg_module.hpp"
#include "siltkit/correspond/pipeline.hpp"
#include "siltkit/io/certificate.hpp"
