#pragma once

#include "ssc/cyclotomic.hpp"
#include "ssc/errors.hpp"
#include "ssc/frobenius.hpp"
#include "ssc/gauss.hpp"
#include "ssc/padic.hpp"
#include "ssc/report.hpp"
#include "ssc/sl2.hpp"
#include "ssc/sl3.hpp"
#include "ssc/weyl.hpp"
