#pragma once

#include "qprep/angles.hpp"
#include "qprep/circuit.hpp"
#include "qprep/distribution.hpp"
#include "qprep/errors.hpp"
#include "qprep/gray.hpp"
#include "qprep/io.hpp"
#include "qprep/simulator.hpp"
#include "qprep/transpiler.hpp"
#include "qprep/walsh.hpp"
#include "qprep/words.hpp"
