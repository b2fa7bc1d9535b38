#pragma once

#include "qgame/commands.hpp"
#include "qgame/config.hpp"
#include "qgame/engine.hpp"
#include "qgame/equilibrium.hpp"
#include "qgame/errors.hpp"
#include "qgame/format.hpp"
#include "qgame/game.hpp"
#include "qgame/state.hpp"
