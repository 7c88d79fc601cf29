#pragma once

#include "dwf/channels.hpp"
#include "dwf/closed_forms.hpp"
#include "dwf/error.hpp"
#include "dwf/galois_field.hpp"
#include "dwf/linalg.hpp"
#include "dwf/measures.hpp"
#include "dwf/mub.hpp"
#include "dwf/net_search.hpp"
#include "dwf/phase_space.hpp"
#include "dwf/states.hpp"
#include "dwf/sweep.hpp"
#include "dwf/verify.hpp"
#include "dwf/wigner.hpp"
