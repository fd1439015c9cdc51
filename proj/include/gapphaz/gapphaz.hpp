#pragma once

#include "gapphaz/dataset.hpp"
#include "gapphaz/demo.hpp"
#include "gapphaz/empirical.hpp"
#include "gapphaz/errors.hpp"
#include "gapphaz/gamma_process.hpp"
#include "gapphaz/hazard_models.hpp"
#include "gapphaz/hyper_params.hpp"
#include "gapphaz/inference.hpp"
#include "gapphaz/io.hpp"
#include "gapphaz/quadrature.hpp"
#include "gapphaz/rng.hpp"
#include "gapphaz/validation.hpp"
