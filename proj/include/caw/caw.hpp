#pragma once

#include "caw/analysis.hpp"
#include "caw/audio_io.hpp"
#include "caw/chaos.hpp"
#include "caw/cipher.hpp"
#include "caw/error.hpp"
#include "caw/keying.hpp"
#include "caw/lifting.hpp"
