#pragma once

#include "qdchan/types.hpp"
#include "qdchan/heisenberg.hpp"
#include "qdchan/channel.hpp"
#include "qdchan/states.hpp"
#include "qdchan/entropy.hpp"
#include "qdchan/crossover.hpp"
