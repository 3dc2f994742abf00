#pragma once

#include "fwlab/coset_action.hpp"
#include "fwlab/derangements.hpp"
#include "fwlab/error.hpp"
#include "fwlab/fw_construct.hpp"
#include "fwlab/gallery.hpp"
#include "fwlab/group.hpp"
#include "fwlab/permutation.hpp"
#include "fwlab/prime_field.hpp"
#include "fwlab/report.hpp"
#include "fwlab/subgroup.hpp"
