from django.urls import path
from . import views

urlpatterns = [
    path('config/', views.engine_config, name='engine-config'),
]
