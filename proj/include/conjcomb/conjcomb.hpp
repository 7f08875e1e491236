#pragma once

#include "conjcomb/antisym.hpp"
#include "conjcomb/channel.hpp"
#include "conjcomb/concurrence.hpp"
#include "conjcomb/conjugation.hpp"
#include "conjcomb/io.hpp"
#include "conjcomb/nogo.hpp"
#include "conjcomb/parallel.hpp"
#include "conjcomb/tensor.hpp"
