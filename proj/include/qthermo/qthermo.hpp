// qthermo.hpp - umbrella header for the library (the CLI lives under qthermo/cli)

#pragma once

#include "qthermo/bath_decay.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/lambert_w.hpp"
#include "qthermo/qfi_engine.hpp"
#include "qthermo/quantum_state.hpp"
#include "qthermo/random.hpp"
#include "qthermo/strategies.hpp"
#include "qthermo/summation.hpp"
